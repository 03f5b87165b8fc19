"""Resource guards shared by the heavy constructions."""

from __future__ import annotations

import os

DEFAULT_MAX_RANK = 200_000
ENV_VAR = "ASPHERA_MAX_RANK"


class ScaleExceeded(RuntimeError):
    """A computation would exceed the configured size cap."""


def max_rank() -> int:
    value = os.environ.get(ENV_VAR)
    if value is None:
        return DEFAULT_MAX_RANK
    try:
        return int(value)
    except ValueError:
        raise ValueError(f"{ENV_VAR} must be an integer, got {value!r}") from None


def guard(size: int, what: str, limit: int | None = None) -> None:
    cap = max_rank() if limit is None else limit
    if size > cap:
        raise ScaleExceeded(f"{what} has size {size} > cap {cap} (set {ENV_VAR} to raise it)")
