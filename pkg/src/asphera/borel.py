"""Homotopy quotients (T x E_m G)/G from finite Milnor joins.

The default route builds the cellular chain complex of the product, with
cells sigma x tau, and takes coinvariants under the diagonal action.  That
action is free because the join factor is free.  A second route
triangulates the product by staircases and is available whenever both
factor actions preserve the vertex order inside simplices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product

from .abelian import AbelianGroup
from .grp import FiniteGroup
from .lattice import SimplicialAction, SimplicialComplex
from .limits import guard
from .snf import IntMatrix
from .topo import (
    CellAction,
    ChainComplex,
    boundary_matrix,
    is_free_action,
    orbit_chain_complex,
    orbit_complex,
)

UNRELIABLE = "UNRELIABLE"


@dataclass(frozen=True)
class JoinComplex:
    complex: SimplicialComplex
    action: SimplicialAction
    levels: int


def milnor_join(G: FiniteGroup, m: int) -> JoinComplex:
    """m-fold join of G as a discrete set; vertex level*|G| + g."""
    if m < 1:
        raise ValueError("join needs at least one level")
    n = G.order
    guard((n + 1) ** m, "Milnor join simplex count")
    facets = [tuple(level * n + g for level, g in enumerate(choice)) for choice in product(range(n), repeat=m)]
    K = SimplicialComplex.from_maximal(n * m, facets)
    perms = [tuple(level * n + G.mul(g, h) for level in range(m) for h in range(n)) for g in G.elements]
    sa = SimplicialAction(G, K, perms)
    verdict = is_free_action(sa)
    if not verdict.free:
        raise AssertionError(f"join action not free: {verdict.witness}")
    return JoinComplex(K, sa, m)


# staircase triangulation


def _paths(p: int, q: int):
    """Monotone lattice paths from (0,0) to (p,q) as vertex lists."""
    for rights in combinations(range(p + q), p):
        i = j = 0
        path = [(0, 0)]
        rs = set(rights)
        for step in range(p + q):
            if step in rs:
                i += 1
            else:
                j += 1
            path.append((i, j))
        yield path


def _maximal(K: SimplicialComplex) -> list[tuple[int, ...]]:
    top = []
    for k in range(K.dimension, -1, -1):
        for s in K.faces(k):
            if not any(set(s) <= set(t) for t in top):
                top.append(s)
    return top


def staircase_product(K: SimplicialComplex, L: SimplicialComplex) -> SimplicialComplex:
    """Triangulated K x L on vertices a*|L| + b; simplices are product-order chains."""
    nl = L.n_vertices
    facets = []
    count = 0
    mk, ml = _maximal(K), _maximal(L)
    for s in mk:
        for t in ml:
            p, q = len(s) - 1, len(t) - 1
            for path in _paths(p, q):
                facets.append(tuple(s[i] * nl + t[j] for i, j in path))
                count += 1
    guard(count, "staircase product top simplices")
    return SimplicialComplex.from_maximal(K.n_vertices * nl, facets)


def is_order_compatible(sa: SimplicialAction) -> bool:
    """Every group element is increasing on the vertices of each simplex."""
    for p in sa.perms:
        for layer in sa.complex.simplices[1:]:
            for s in layer:
                if any(p[s[i]] > p[s[i + 1]] for i in range(len(s) - 1)):
                    return False
    return True


def diagonal_action(a: SimplicialAction, b: SimplicialAction, prod: SimplicialComplex | None = None) -> SimplicialAction:
    """g(x, y) = (gx, gy) on the staircase product; both actions must be order-compatible."""
    if a.group != b.group:
        raise ValueError("factor actions use different groups")
    for name, sa in (("first", a), ("second", b)):
        if not is_order_compatible(sa):
            raise ValueError(f"{name} factor action reverses a simplex; the staircase product is not invariant")
    prod = staircase_product(a.complex, b.complex) if prod is None else prod
    nl = b.complex.n_vertices
    perms = [
        tuple(pa[x] * nl + pb[y] for x in range(a.complex.n_vertices) for y in range(nl))
        for pa, pb in zip(a.perms, b.perms)
    ]
    return SimplicialAction(a.group, prod, perms)


# cellular product


@dataclass
class ProductCells:
    """Cells sigma x tau of degree <= top, with their (i, sigma, tau) labels."""

    cells: list[list[tuple[int, int, int]]]
    chain_complex: ChainComplex
    action: CellAction


def _product_cells(a: SimplicialAction, b: SimplicialAction, top: int) -> ProductCells:
    K, L = a.complex, b.complex
    G = a.group
    cells: list[list[tuple[int, int, int]]] = []
    where: list[dict[tuple[int, int, int], int]] = []
    for n in range(top + 1):
        layer = [(i, s, t) for i in range(min(n, K.dimension) + 1) if n - i <= L.dimension
                 for s in range(K.count(i)) for t in range(L.count(n - i))]
        cells.append(layer)
        where.append({c: k for k, c in enumerate(layer)})
    guard(len(cells[top]), "product cells in the top degree")
    bk = [boundary_matrix(K, i).transpose() for i in range(K.dimension + 1)]
    bl = [boundary_matrix(L, j).transpose() for j in range(L.dimension + 1)]
    bounds = [IntMatrix.zeros(0, len(cells[0]))]
    for n in range(1, top + 1):
        trip = []
        for col, (i, s, t) in enumerate(cells[n]):
            j = n - i
            if i > 0:
                for f, v in bk[i].row_dict(s).items():
                    trip.append((where[n - 1][(i - 1, f, t)], col, v))
            if j > 0:
                sign = -1 if i % 2 else 1
                for f, v in bl[j].row_dict(t).items():
                    trip.append((where[n - 1][(i, s, f)], col, sign * v))
        bounds.append(IntMatrix.from_triplets(len(cells[n - 1]), len(cells[n]), trip))
    cc = ChainComplex(bounds)

    sk = [a.signed_permutation(i) for i in range(K.dimension + 1)]
    sl = [b.signed_permutation(j) for j in range(L.dimension + 1)]
    maps = []
    for n in range(top + 1):
        per_g = []
        for g in G.elements:
            row = []
            for i, s, t in cells[n]:
                s2, e1 = sk[i][g][s]
                t2, e2 = sl[n - i][g][t]
                row.append((where[n][(i, s2, t2)], e1 * e2))
            per_g.append(row)
        maps.append(per_g)
    return ProductCells(cells, cc, CellAction(G, tuple(maps)))


def borel_complex(T: SimplicialComplex, sa: SimplicialAction, m: int, top: int | None = None) -> ChainComplex:
    """Coinvariant chains of T x E_m G in degrees <= top (default: all)."""
    if m < 2:
        raise ValueError("need m >= 2")
    if sa.complex != T:
        raise ValueError("action is on a different complex")
    E = milnor_join(sa.group, m)
    top = T.dimension + m - 1 if top is None else min(top, T.dimension + m - 1)
    cells = _product_cells(sa, E.action, top)
    return orbit_chain_complex(cells.chain_complex, cells.action).chain_complex


@dataclass
class BorelResult:
    levels: int
    valid_degree: int
    groups: list[AbelianGroup]
    unreliable: dict[int, AbelianGroup] = field(default_factory=dict)
    route: str = "cellular"

    def to_dict(self) -> dict:
        return {
            "levels": self.levels,
            "valid_degree": self.valid_degree,
            "route": self.route,
            "certified": [{"degree": k, "group": str(g), "factors": g.to_dict()} for k, g in enumerate(self.groups)],
            "uncertified": [
                {"degree": k, "group": str(g), "flag": UNRELIABLE} for k, g in sorted(self.unreliable.items())
            ],
        }


def borel_homology(
    T: SimplicialComplex, sa: SimplicialAction, m: int | None = None, kmax: int = 1, route: str = "cellular"
) -> BorelResult:
    """H_k((T x E_m G)/G) for k <= kmax; only k <= m - 2 are certified."""
    m = kmax + 2 if m is None else m
    if route == "cellular":
        cc = borel_complex(T, sa, m, kmax + 1)
    elif route == "staircase":
        if m < 2:
            raise ValueError("need m >= 2")
        E = milnor_join(sa.group, m)
        prod = diagonal_action(sa, E.action)
        cc = orbit_complex(prod.complex, prod, kmax + 1).chain_complex
    else:
        raise ValueError(f"unknown route {route!r}")
    values = [cc.homology_group(k) for k in range(kmax + 1)]
    bound = m - 2
    groups = values[: bound + 1]
    unreliable = {k: values[k] for k in range(bound + 1, kmax + 1)}
    return BorelResult(m, bound, groups, unreliable, route)
