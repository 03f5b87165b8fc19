"""Finite groups given by multiplication tables.

Elements are the indices ``0..order-1``.  Tables are exhaustive, which keeps
subgroup enumeration and every action check exact at the scales this
package targets (a few dozen elements).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from math import gcd
from typing import Iterable, Sequence


class GroupError(ValueError):
    """Malformed group data (bad table, non-closed subset, broken action)."""


@dataclass(frozen=True)
class FiniteGroup:
    table: tuple[tuple[int, ...], ...]
    names: tuple[str, ...]
    identity: int = 0
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(tuple(int(x) for x in row) for row in self.table))
        object.__setattr__(self, "names", tuple(self.names))
        n = len(self.table)
        if n == 0:
            raise GroupError("a group needs at least one element")
        if len(self.names) != n:
            raise GroupError(f"{len(self.names)} names for {n} elements")
        if self.check:
            self._validate()

    def _validate(self):
        n, t, e = self.order, self.table, self.identity
        full = set(range(n))
        for g, row in enumerate(t):
            if len(row) != n or set(row) != full:
                raise GroupError(f"row {g} is not a permutation of 0..{n - 1}")
        for h in range(n):
            if {t[g][h] for g in range(n)} != full:
                raise GroupError(f"column {h} is not a permutation of 0..{n - 1}")
        if any(t[e][g] != g or t[g][e] != g for g in range(n)):
            raise GroupError(f"element {e} is not a two-sided identity")
        for a, b, c in product(range(n), repeat=3):
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise GroupError(f"associativity fails for ({a}, {b}, {c})")

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @cached_property
    def _inverses(self) -> tuple[int, ...]:
        e = self.identity
        return tuple(row.index(e) for row in self.table)

    def inv(self, a: int) -> int:
        return self._inverses[a]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        x = self.identity
        for _ in range(k):
            x = self.table[x][a]
        return x

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.table[x][a]
            k += 1
        return k

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in self.elements for b in range(a))

    def cyclic_generator(self) -> int | None:
        """Some element generating the whole group, preferring the smallest index."""
        for a in self.elements:
            if self.element_order(a) == self.order:
                return a
        return None

    def is_cyclic(self) -> bool:
        return self.cyclic_generator() is not None

    def to_dict(self) -> dict:
        return {"order": self.order, "identity": self.identity, "names": list(self.names), "table": [list(r) for r in self.table]}

    @classmethod
    def from_dict(cls, data: dict) -> FiniteGroup:
        return cls(table=data["table"], names=data["names"], identity=data.get("identity", 0))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order}, names={list(self.names)})"


# constructors


def cyclic(n: int) -> FiniteGroup:
    """Z_n with residues as elements; 1 generates."""
    if n < 1:
        raise GroupError("cyclic group needs n >= 1")
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return FiniteGroup(table, [str(a) for a in range(n)], check=False)


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n.

    Index i < n is the rotation r^i, index n + i is s*r^i, with s r s = r^-1.
    """
    if n < 1:
        raise GroupError("dihedral group needs n >= 1")

    def mul(a, b):
        fa, ia = divmod(a, n)
        fb, ib = divmod(b, n)
        # r^ia s^fb = s^fb r^(+-ia)
        i = (ia if fb == 0 else -ia) + ib
        return ((fa + fb) % 2) * n + i % n

    def name(a):
        f, i = divmod(a, n)
        rot = "" if i == 0 else ("r" if i == 1 else f"r^{i}")
        if f:
            return "s" + rot
        return rot or "e"

    size = 2 * n
    table = [[mul(a, b) for b in range(size)] for a in range(size)]
    return FiniteGroup(table, [name(a) for a in range(size)], check=False)


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """G x H with element (g, h) at index g * |H| + h."""
    m = H.order
    size = G.order * m
    table = [
        [G.mul(a // m, b // m) * m + H.mul(a % m, b % m) for b in range(size)]
        for a in range(size)
    ]
    names = [f"({G.names[a // m]},{H.names[a % m]})" for a in range(size)]
    return FiniteGroup(table, names, identity=G.identity * m + H.identity, check=False)


def from_table(table: Sequence[Sequence[int]], names: Sequence[str] | None = None, identity: int | None = None) -> FiniteGroup:
    """Validated group from an explicit table; the identity is detected if not given."""
    n = len(table)
    if identity is None:
        identity = next((e for e in range(n) if list(table[e]) == list(range(n))), None)
        if identity is None:
            raise GroupError("no row of the table is the identity permutation")
    if names is None:
        names = [str(i) for i in range(n)]
    return FiniteGroup(table, names, identity=identity)


def build_group(spec: str) -> FiniteGroup:
    """Parse ``cyclic:N``, ``dihedral:N`` or a product ``A x B`` of those."""
    parts = [p.strip() for p in spec.split("x")]
    if len(parts) > 1:
        G = build_group(parts[0])
        for p in parts[1:]:
            G = direct_product(G, build_group(p))
        return G
    kind, _, arg = spec.strip().partition(":")
    try:
        n = int(arg)
    except ValueError:
        raise GroupError(f"bad group spec {spec!r}; expected cyclic:N or dihedral:N") from None
    if kind in ("cyclic", "Z", "C"):
        return cyclic(n)
    if kind in ("dihedral", "D"):
        return dihedral(n)
    raise GroupError(f"unknown group family {kind!r}")


# subgroups and cosets


@dataclass(frozen=True)
class Subgroup:
    members: tuple[int, ...]
    parent_order: int

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, g: int) -> bool:
        return g in self._set

    @cached_property
    def _set(self) -> frozenset[int]:
        return frozenset(self.members)

    def to_dict(self) -> dict:
        return {"members": list(self.members), "parent_order": self.parent_order}

    @classmethod
    def from_dict(cls, data: dict) -> Subgroup:
        return cls(tuple(sorted(data["members"])), int(data["parent_order"]))


@dataclass(frozen=True)
class Coset:
    subgroup: Subgroup
    representative: int
    members: tuple[int, ...]


def closure(G: FiniteGroup, gens: Iterable[int]) -> frozenset[int]:
    """Subgroup generated by ``gens`` (closure under multiplication)."""
    elems = {G.identity}
    frontier = list(elems)
    gens = list(dict.fromkeys(gens))
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = G.mul(x, g)
                if y not in elems:
                    elems.add(y)
                    new.append(y)
        frontier = new
    return frozenset(elems)


def subgroup(G: FiniteGroup, members: Iterable[int]) -> Subgroup:
    """Validated Subgroup from an explicit member set."""
    s = frozenset(members)
    if G.identity not in s:
        raise GroupError("subset does not contain the identity")
    for a in s:
        if G.inv(a) not in s:
            raise GroupError(f"subset not closed under inverses at {a}")
        for b in s:
            if G.mul(a, b) not in s:
                raise GroupError(f"subset not closed: {a}*{b} = {G.mul(a, b)} escapes")
    return Subgroup(tuple(sorted(s)), G.order)


def generated_subgroup(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    return Subgroup(tuple(sorted(closure(G, gens))), G.order)


def all_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """Every subgroup, sorted by (size, members).

    Breadth-first: each found subgroup is extended by one outside element
    and closed again.  Exponential in general, fine for small tables.
    """
    start = frozenset([G.identity])
    seen = {start}
    queue = [start]
    while queue:
        nxt = []
        for H in queue:
            for g in G.elements:
                if g in H:
                    continue
                K = closure(G, list(H) + [g])
                if K not in seen:
                    seen.add(K)
                    nxt.append(K)
        queue = nxt
    subs = [Subgroup(tuple(sorted(H)), G.order) for H in seen]
    subs.sort(key=lambda S: (S.order, S.members))
    return subs


def _require_subgroup(G: FiniteGroup, H: Subgroup):
    if H.parent_order != G.order:
        raise GroupError("subgroup belongs to a group of different order")
    subgroup(G, H.members)


def left_cosets(G: FiniteGroup, H: Subgroup) -> list[Coset]:
    """Left cosets gH, each with its minimal-index representative, sorted by representative."""
    _require_subgroup(G, H)
    seen: set[int] = set()
    out = []
    for g in G.elements:
        if g in seen:
            continue
        members = tuple(sorted(G.mul(g, h) for h in H.members))
        seen.update(members)
        out.append(Coset(H, members[0], members))
    return out


def index(G: FiniteGroup, H: Subgroup) -> int:
    return G.order // H.order


def is_normal(G: FiniteGroup, H: Subgroup) -> bool:
    _require_subgroup(G, H)
    return all(G.mul(G.mul(g, h), G.inv(g)) in H for g in G.elements for h in H.members)


def quotient_group(G: FiniteGroup, H: Subgroup) -> tuple[FiniteGroup, list[Coset]]:
    """G/H as a table on the left cosets (in :func:`left_cosets` order)."""
    if not is_normal(G, H):
        raise GroupError("quotient by a non-normal subgroup")
    cosets = left_cosets(G, H)
    where = {}
    for k, c in enumerate(cosets):
        for x in c.members:
            where[x] = k
    table = [[where[G.mul(a.representative, b.representative)] for b in cosets] for a in cosets]
    names = [G.names[c.representative] + "H" for c in cosets]
    return FiniteGroup(table, names, identity=where[G.identity], check=False), cosets


# actions


@dataclass(frozen=True)
class GroupAction:
    """Left action of ``group`` on {0..ground_size-1}: perms[g][x] = g.x."""

    group: FiniteGroup
    ground_size: int
    perms: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "perms", tuple(tuple(p) for p in self.perms))
        G, n = self.group, self.ground_size
        if len(self.perms) != G.order:
            raise GroupError(f"{len(self.perms)} permutations for a group of order {G.order}")
        full = list(range(n))
        for g, p in enumerate(self.perms):
            if len(p) != n or sorted(p) != full:
                raise GroupError(f"image of element {G.names[g]} is not a permutation")
        if self.perms[G.identity] != tuple(full):
            raise GroupError("identity does not act trivially")
        for g, h in product(G.elements, repeat=2):
            pg, ph, pgh = self.perms[g], self.perms[h], self.perms[G.mul(g, h)]
            if any(pgh[x] != pg[ph[x]] for x in full):
                raise GroupError(f"homomorphism law fails for ({G.names[g]}, {G.names[h]})")

    def __call__(self, g: int, x: int) -> int:
        return self.perms[g][x]

    def stabilizer(self, x: int) -> Subgroup:
        return Subgroup(tuple(g for g in self.group.elements if self.perms[g][x] == x), self.group.order)

    def orbit(self, x: int) -> list[int]:
        return sorted({p[x] for p in self.perms})

    def fixed_points(self) -> list[int]:
        return [x for x in range(self.ground_size) if all(p[x] == x for p in self.perms)]

    def restrict(self, H: Subgroup) -> tuple[FiniteGroup, GroupAction]:
        """The action of H, with H realised as its own table (members in sorted order)."""
        Hg = subgroup_as_group(self.group, H)
        return Hg, GroupAction(Hg, self.ground_size, [self.perms[g] for g in H.members])


def subgroup_as_group(G: FiniteGroup, H: Subgroup) -> FiniteGroup:
    pos = {g: k for k, g in enumerate(H.members)}
    table = [[pos[G.mul(a, b)] for b in H.members] for a in H.members]
    return FiniteGroup(table, [G.names[g] for g in H.members], identity=pos[G.identity], check=False)


def trivial_action(G: FiniteGroup, size: int) -> GroupAction:
    return GroupAction(G, size, [tuple(range(size))] * G.order)


def _member_action(G: FiniteGroup, sets: Sequence[tuple[int, ...]], image) -> GroupAction:
    lookup = {frozenset(s): k for k, s in enumerate(sets)}
    perms = []
    for g in G.elements:
        p = []
        for k, s in enumerate(sets):
            img = frozenset(image(g, x) for x in s)
            if img not in lookup:
                raise GroupError(f"target {k} is sent outside the list by element {G.names[g]}")
            p.append(lookup[img])
        perms.append(p)
    return GroupAction(G, len(sets), perms)


def shift_action(G: FiniteGroup, cosets: Sequence[Coset]) -> GroupAction:
    """Left translation g.(xH) = (gx)H."""
    return _member_action(G, [c.members for c in cosets], G.mul)


def conjugation_action(G: FiniteGroup, targets: Sequence[Subgroup | Coset]) -> GroupAction:
    """Conjugation g.X = g X g^-1 on subgroups or cosets."""
    return _member_action(G, [t.members for t in targets], lambda g, x: G.mul(G.mul(g, x), G.inv(g)))


def regular_action(G: FiniteGroup) -> GroupAction:
    return GroupAction(G, G.order, [G.table[g] for g in G.elements])


def is_homomorphism(G: FiniteGroup, H: FiniteGroup, f: Sequence[int]) -> bool:
    return all(f[G.mul(a, b)] == H.mul(f[a], f[b]) for a in G.elements for b in G.elements)


def exponent(G: FiniteGroup) -> int:
    e = 1
    for a in G.elements:
        k = G.element_order(a)
        e = e * k // gcd(e, k)
    return e
