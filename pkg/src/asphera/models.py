"""Small complexes and actions used throughout: cycles, polygons, coset graphs."""

from __future__ import annotations

from .grp import FiniteGroup, cyclic, dihedral, shift_action
from .lattice import (
    Poset,
    PosetAction,
    SimplicialAction,
    SimplicialComplex,
    coset_poset,
    simplicial_action,
    trivial_simplicial_action,
)


def point() -> SimplicialComplex:
    return SimplicialComplex.from_maximal(1, [(0,)])


def cycle_graph(n: int) -> SimplicialComplex:
    if n < 3:
        raise ValueError("a simplicial cycle needs at least 3 vertices")
    return SimplicialComplex.from_maximal(n, [(i, (i + 1) % n) for i in range(n)])


def triangle() -> SimplicialComplex:
    return cycle_graph(3)


def rotation_action(n: int, k: int) -> SimplicialAction:
    """Z_n rotating the cycle C_{kn} by k steps per generator."""
    G = cyclic(n)
    m = k * n
    perms = [tuple((i + a * k) % m for i in range(m)) for a in G.elements]
    return SimplicialAction(G, cycle_graph(m), perms)


HEXAGON_ACTIONS = ("trivial", "antipodal", "reflection")


def hexagon_action(kind: str) -> SimplicialAction:
    """Z_2 on the 6-cycle: trivially, by i -> i+3, or by the reflection i -> -i."""
    G = cyclic(2)
    K = cycle_graph(6)
    if kind == "trivial":
        return trivial_simplicial_action(G, K)
    if kind == "antipodal":
        flip = tuple((i + 3) % 6 for i in range(6))
    elif kind == "reflection":
        flip = tuple((-i) % 6 for i in range(6))
    else:
        raise ValueError(f"unknown hexagon action {kind!r}; expected one of {HEXAGON_ACTIONS}")
    return SimplicialAction(G, K, [tuple(range(6)), flip])


def dihedral_polygon_action(n: int) -> SimplicialAction:
    """D_{2n} permuting the vertices of the n-gon: r^a: i -> i+a, s r^a: i -> -(i+a)."""
    G = dihedral(n)
    perms = [tuple((i + a) % n for i in range(n)) for a in range(n)]
    perms += [tuple((-(i + a)) % n for i in range(n)) for a in range(n)]
    return SimplicialAction(G, cycle_graph(n), perms)


def coset_shift_action(G: FiniteGroup) -> tuple[Poset, SimplicialAction]:
    """Left translation of G on the order complex of its coset poset."""
    P = coset_poset(G)
    a = shift_action(G, list(P.items))
    return P, simplicial_action(PosetAction(a, P))


def zpq_graph(p: int, q: int) -> tuple[Poset, SimplicialAction]:
    return coset_shift_action(cyclic(p * q))
