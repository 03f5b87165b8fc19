"""Finitely generated abelian groups in invariant-factor form."""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import prod
from typing import Iterable

from .snf import IntMatrix, invariant_factors


@dataclass(frozen=True)
class AbelianGroup:
    """Z^free_rank + Z_{d_1} + ... + Z_{d_k} with d_1 | d_2 | ... and d_i >= 2.

    Use :meth:`from_orders` to build one from an arbitrary list of cyclic
    orders; the constructor insists on canonical input.
    """

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        t = self.torsion
        if any(d < 2 for d in t):
            raise ValueError(f"invariant factors must be >= 2, got {t}")
        if any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ValueError(f"invariant factors {t} do not form a divisibility chain")

    @classmethod
    def from_orders(cls, orders: Iterable[int]) -> AbelianGroup:
        """Direct sum of cyclic groups Z_o (o = 0 meaning Z; o = 1 dropped)."""
        orders = [abs(o) for o in orders]
        free = sum(1 for o in orders if o == 0)
        finite = [o for o in orders if o > 1]
        if not finite:
            return cls(free, ())
        factors = invariant_factors(IntMatrix.diagonal(finite))
        return cls(free, tuple(d for d in factors if d != 1))

    @classmethod
    def from_invariant_factors(cls, factors: Iterable[int], ambient_rank: int) -> AbelianGroup:
        """Cokernel of a map into Z^ambient_rank with the given nonzero factors."""
        factors = list(factors)
        return cls(ambient_rank - len(factors), tuple(d for d in factors if d != 1))

    @classmethod
    def parse(cls, text: str) -> AbelianGroup:
        """Inverse of ``str``: accepts forms like ``0``, ``Z``, ``Z^2 + Z_6``."""
        text = text.strip()
        if text in ("0", ""):
            return cls()
        orders = []
        for part in re.split(r"\s*\+\s*", text):
            m = re.fullmatch(r"Z(?:\^(\d+))?", part)
            if m:
                orders += [0] * int(m.group(1) or 1)
                continue
            m = re.fullmatch(r"Z_(\d+)(?:\^(\d+))?", part)
            if not m:
                raise ValueError(f"cannot parse abelian group term {part!r}")
            orders += [int(m.group(1))] * int(m.group(2) or 1)
        return cls.from_orders(orders)

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int | None:
        """Group order, or None if infinite."""
        return prod(self.torsion) if self.is_finite else None

    @property
    def exponent(self) -> int | None:
        if not self.is_finite:
            return None
        return self.torsion[-1] if self.torsion else 1

    def __add__(self, other: AbelianGroup) -> AbelianGroup:
        return AbelianGroup.from_orders([0] * (self.free_rank + other.free_rank) + list(self.torsion + other.torsion))

    def __str__(self) -> str:
        if self.is_trivial:
            return "0"
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts += [f"Z_{d}" for d in self.torsion]
        return " + ".join(parts)

    def to_dict(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion), "text": str(self)}

    @classmethod
    def from_dict(cls, data: dict) -> AbelianGroup:
        return cls(int(data["free_rank"]), tuple(int(d) for d in data["torsion"]))


Z = AbelianGroup(1)
TRIVIAL = AbelianGroup()


def cyclic(n: int) -> AbelianGroup:
    return AbelianGroup.from_orders([n])
