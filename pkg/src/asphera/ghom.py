"""G-modules, group (co)homology and the H^2 classification of extensions.

A module is Z^n modulo the column lattice of a relation matrix R, with one
integer matrix per group element.  The action matrices only have to respect
the group law modulo R, so torsion modules coming from homology need no
special care.

Chain groups of the bar (or periodic) complex are then presented groups
F_j / R_j.  Their homology is computed from a free total complex

    T_j = F_j + Q_{j-1},    d(x, y) = (D_j x + R_{j-1} y,  -h_j x - E_{j-1} y)

where R_j D_j-lifts as D_j R_j = R_{j-1} E_j and D_{j-1} D_j = R_{j-2} h_j.
Because each R_j is injective this complex has the same homology as the
presented one, and only invariant factors of integer matrices are needed.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from math import gcd, lcm
from typing import Callable, Mapping, Sequence

from .abelian import AbelianGroup
from .grp import FiniteGroup, GroupError, Subgroup, all_subgroups
from .lattice import SimplicialAction
from .limits import guard
from .snf import IntMatrix, Lattice, LatticeQuotient, block_diagonal, invariant_factors, kernel_basis
from .topo import homology


class GModuleError(ValueError):
    pass


@dataclass(frozen=True)
class GModule:
    """Z^n / (columns of ``relations``) with a G-action by integer matrices.

    Build through :func:`make_gmodule`, which validates the action and
    replaces the relations by an independent set spanning the same lattice.
    """

    group: FiniteGroup
    n_gens: int
    relations: IntMatrix
    action: tuple[IntMatrix, ...]
    name: str = ""

    @property
    def n_relations(self) -> int:
        return self.relations.cols

    @cached_property
    def lattice(self) -> Lattice:
        return Lattice(self.relations)

    def matrix(self, g: int) -> IntMatrix:
        return self.action[g]

    @cached_property
    def relation_action(self) -> tuple[IntMatrix, ...]:
        """B_g with R B_g = A_g R (the action restricted to the relation lattice)."""
        return tuple(_solve_cols(self.lattice, self.action[g] @ self.relations) for g in self.group.elements)

    @cached_property
    def is_honest(self) -> bool:
        """Whether the matrices satisfy the group law exactly, not just modulo R."""
        G = self.group
        A = self.action
        return all(A[G.mul(g, h)] == A[g] @ A[h] for g in G.elements for h in G.elements)

    @cached_property
    def underlying(self) -> AbelianGroup:
        """Abelian group structure of M, forgetting the action."""
        return AbelianGroup.from_invariant_factors(invariant_factors(self.relations), self.n_gens)

    @cached_property
    def _elements_quotient(self) -> LatticeQuotient:
        return LatticeQuotient(IntMatrix.identity(self.n_gens), self.relations)

    def canonical(self, v: Sequence[int]) -> tuple[int, ...]:
        """Coordinates identifying the class of v in M uniquely."""
        return tuple(self._elements_quotient.coordinates(v))

    def is_zero(self, v: Sequence[int]) -> bool:
        return self.lattice.contains(v)

    def elements(self) -> list[list[int]]:
        """One representative vector per element (finite modules only)."""
        q = self._elements_quotient
        if any(o == 0 for o in q.orders):
            raise GModuleError("module is infinite")
        out = []
        for coeffs in product(*(range(o) for o in q.orders)):
            v = [0] * self.n_gens
            for c, gen in zip(coeffs, q.generators):
                for i, x in enumerate(gen):
                    v[i] += c * x
            out.append(v)
        return out

    def act(self, g: int, v: Sequence[int]) -> list[int]:
        return self.action[g].apply(v)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "n_gens": self.n_gens,
            "relations": self.relations.columns(),
            "action": {self.group.names[g]: self.action[g].to_rows() for g in self.group.elements},
            "underlying": str(self.underlying),
        }


def _solve_cols(lat: Lattice, B: IntMatrix) -> IntMatrix:
    cols = []
    for j, col in enumerate(B.columns()):
        y = lat.solve(col)
        if y is None:
            raise GModuleError(f"column {j} leaves the relation lattice")
        cols.append(y)
    return IntMatrix.from_columns(cols, lat.gens.cols) if cols else IntMatrix.zeros(lat.gens.cols, 0)


def make_gmodule(
    G: FiniteGroup,
    n_gens: int,
    relations: IntMatrix | Sequence[Sequence[int]] | None,
    action: Sequence[IntMatrix | Sequence[Sequence[int]]],
    name: str = "",
) -> GModule:
    """Validated module.  ``relations`` holds relations as columns (n x r)."""
    if relations is None:
        R = IntMatrix.zeros(n_gens, 0)
    elif isinstance(relations, IntMatrix):
        R = relations
    else:
        R = IntMatrix.from_columns([list(c) for c in relations], n_gens)
    if R.rows != n_gens:
        raise GModuleError(f"relation matrix has {R.rows} rows for {n_gens} generators")
    mats = [a if isinstance(a, IntMatrix) else IntMatrix.from_rows(a, n_gens) for a in action]
    if len(mats) != G.order:
        raise GModuleError(f"{len(mats)} action matrices for a group of order {G.order}")
    for g, a in enumerate(mats):
        if a.shape != (n_gens, n_gens):
            raise GModuleError(f"action matrix of {G.names[g]} has shape {a.shape}")
    lat = Lattice(R)
    basis = lat.basis()

    def congruent(X: IntMatrix, Y: IntMatrix) -> bool:
        return all(lat.contains(c) for c in (X - Y).columns())

    if not congruent(mats[G.identity], IntMatrix.identity(n_gens)):
        raise GModuleError("identity does not act trivially")
    for g in G.elements:
        if not all(lat.contains(c) for c in (mats[g] @ basis).columns()):
            raise GModuleError(f"{G.names[g]} does not preserve the relation lattice")
    for g, h in product(G.elements, repeat=2):
        if not congruent(mats[g] @ mats[h], mats[G.mul(g, h)]):
            raise GModuleError(f"homomorphism law fails for ({G.names[g]}, {G.names[h]})")
    return GModule(G, n_gens, basis, tuple(mats), name)


def trivial_module(G: FiniteGroup, m: int = 0) -> GModule:
    """Z (m = 0) or Z_m with trivial action."""
    rel = None if m == 0 else [[m]]
    return make_gmodule(G, 1, rel, [[[1]]] * G.order, "Z" if m == 0 else f"Z_{m}")


def sign_module(G: FiniteGroup, kernel: Subgroup | None = None) -> GModule:
    """Z on which elements outside an index-2 subgroup act by -1."""
    if kernel is None:
        cands = [H for H in all_subgroups(G) if 2 * H.order == G.order]
        if len(cands) != 1:
            raise GModuleError(f"group has {len(cands)} index-2 subgroups; pass the kernel explicitly")
        kernel = cands[0]
    if 2 * kernel.order != G.order:
        raise GModuleError("kernel must have index 2")
    mats = [[[1]] if g in kernel else [[-1]] for g in G.elements]
    return make_gmodule(G, 1, None, mats, "Z(sign)")


def chain_map(sa: SimplicialAction, g: int, k: int) -> IntMatrix:
    """Signed permutation matrix of g on the k-chains."""
    K = sa.complex
    trip = []
    for i, s in enumerate(K.faces(k)):
        img, sign = sa.image(g, s)
        trip.append((K.index_of(img), i, sign))
    n = K.count(k)
    return IntMatrix.from_triplets(n, n, trip)


def homology_gmodule(sa: SimplicialAction, k: int) -> GModule:
    """H_k(K) as a G-module: each generator cycle is pushed through g and re-expressed."""
    basis = homology(sa.complex, k)
    n = len(basis.generators)
    mats = []
    for g in sa.group.elements:
        cm = chain_map(sa, g, k)
        cols = [basis.coordinates(cm.apply(z)) for z in basis.generators]
        mats.append(IntMatrix.from_columns(cols, n) if n else IntMatrix.zeros(0, 0))
    rel_cols = []
    for i, o in enumerate(basis.orders):
        if o:
            col = [0] * n
            col[i] = o
            rel_cols.append(col)
    R = IntMatrix.from_columns(rel_cols, n) if rel_cols else IntMatrix.zeros(n, 0)
    M = make_gmodule(sa.group, n, R, mats, f"H_{k}")
    object.__setattr__(M, "_basis", basis)
    return M


# presented complexes


def _block_solve(M: GModule, B: IntMatrix, nblocks: int) -> IntMatrix:
    """X with block_diag(R,...,R) X = B, solved one n-row block at a time."""
    n, r = M.n_gens, M.n_relations
    lat = M.lattice
    data: dict[int, dict[int, int]] = {}
    BT = B.transpose()
    for j in range(B.cols):
        col = BT.row_dict(j)
        if not col:
            continue
        blocks: dict[int, list[int]] = {}
        for i, v in col.items():
            b, off = divmod(i, n)
            blocks.setdefault(b, [0] * n)[off] = v
        for b, vec in blocks.items():
            y = lat.solve(vec)
            if y is None:
                raise ArithmeticError("differential does not preserve the relation lattice")
            for t, v in enumerate(y):
                if v:
                    data.setdefault(b * r + t, {})[j] = v
    return IntMatrix(nblocks * r, B.cols, data)


class _PresentedComplex:
    """Chain complex of presented groups F_j / R_j where R_j = R (+) ... (+) R."""

    def __init__(self, M: GModule, blocks: Callable[[int], int], diff: Callable[[int], IntMatrix]):
        self.M = M
        self._blocks = blocks
        self._diff = diff
        self._cache: dict[int, IntMatrix] = {}

    def nblocks(self, j: int) -> int:
        return self._blocks(j) if j >= 0 else 0

    def fdim(self, j: int) -> int:
        return self.nblocks(j) * self.M.n_gens

    def qdim(self, j: int) -> int:
        return self.nblocks(j) * self.M.n_relations

    def d(self, j: int) -> IntMatrix:
        if j not in self._cache:
            if j <= 0 or self.nblocks(j) == 0 or self.nblocks(j - 1) == 0:
                self._cache[j] = IntMatrix.zeros(self.fdim(j - 1), self.fdim(j))
            else:
                self._cache[j] = self._diff(j)
        return self._cache[j]

    def rel(self, j: int) -> IntMatrix:
        return block_diagonal([self.M.relations] * self.nblocks(j)) if j >= 0 else IntMatrix.zeros(0, 0)

    def total_differential(self, j: int) -> IntMatrix:
        """d_T: T_j = F_j + Q_{j-1}  ->  T_{j-1} = F_{j-1} + Q_{j-2}."""
        D = self.d(j)
        if self.M.n_relations == 0:
            return D
        R1 = self.rel(j - 1)
        top = IntMatrix.hstack([D, R1], rows=self.fdim(j - 1))
        q2 = self.qdim(j - 2)
        if q2 == 0:
            bottom = IntMatrix.zeros(0, top.cols)
        else:
            D1 = self.d(j - 1)
            h = _block_solve(self.M, D1 @ D, self.nblocks(j - 2))
            E = _block_solve(self.M, D1 @ R1, self.nblocks(j - 2))
            bottom = IntMatrix.hstack([-h, -E], rows=q2)
        return IntMatrix.vstack([top, bottom], cols=top.cols)

    def homology(self, k: int) -> AbelianGroup:
        if self.M.n_relations == 0 and not self.M.is_honest:
            raise GModuleError("free module with a non-homomorphic action")
        dk = invariant_factors(self.total_differential(k))
        dk1 = invariant_factors(self.total_differential(k + 1))
        dim = self.fdim(k) + self.qdim(k - 1)
        return AbelianGroup(dim - len(dk) - len(dk1), tuple(x for x in dk1 if x != 1))


# bar resolution


def _nondegenerate(G: FiniteGroup) -> list[int]:
    return [g for g in G.elements if g != G.identity]


def _tuple_index(pos: Mapping[int, int], base: int, t: Sequence[int]) -> int:
    i = 0
    for g in t:
        i = i * base + pos[g]
    return i


def _bar_guard(G: FiniteGroup, M: GModule, j: int) -> None:
    guard(G.order ** j * max(M.n_gens, 1), f"bar chain group of degree {j}")


def _add_block(data: dict, rb: int, cb: int, n: int, coef: IntMatrix | int):
    if isinstance(coef, int):
        for a in range(n):
            row = data.setdefault(rb * n + a, {})
            row[cb * n + a] = row.get(cb * n + a, 0) + coef
        return
    for a, b, v in coef.items():
        row = data.setdefault(rb * n + a, {})
        row[cb * n + b] = row.get(cb * n + b, 0) + v


def bar_chain_differential(G: FiniteGroup, M: GModule, k: int) -> IntMatrix:
    """Normalized bar differential C_k(G;M) -> C_{k-1}(G;M)."""
    elems = _nondegenerate(G)
    pos = {g: i for i, g in enumerate(elems)}
    N, n = len(elems), M.n_gens
    data: dict[int, dict[int, int]] = {}
    for cb, t in enumerate(product(elems, repeat=k)):
        # m (x) [g1|...|gk]  ->  g1^-1 m (x) [g2|...|gk] + ...
        _add_block(data, _tuple_index(pos, N, t[1:]), cb, n, M.action[G.inv(t[0])])
        for i in range(1, k):
            prod_ = G.mul(t[i - 1], t[i])
            if prod_ == G.identity:
                continue
            face = t[: i - 1] + (prod_,) + t[i + 1:]
            _add_block(data, _tuple_index(pos, N, face), cb, n, (-1) ** i)
        _add_block(data, _tuple_index(pos, N, t[:-1]), cb, n, (-1) ** k)
    return IntMatrix(N ** (k - 1) * n, N ** k * n, data)


def bar_cochain_differential(G: FiniteGroup, M: GModule, k: int) -> IntMatrix:
    """Normalized bar coboundary C^k(G;M) -> C^{k+1}(G;M)."""
    elems = _nondegenerate(G)
    pos = {g: i for i, g in enumerate(elems)}
    N, n = len(elems), M.n_gens
    data: dict[int, dict[int, int]] = {}
    for rb, t in enumerate(product(elems, repeat=k + 1)):
        _add_block(data, rb, _tuple_index(pos, N, t[1:]), n, M.action[t[0]])
        for i in range(1, k + 1):
            prod_ = G.mul(t[i - 1], t[i])
            if prod_ == G.identity:
                continue
            face = t[: i - 1] + (prod_,) + t[i + 1:]
            _add_block(data, rb, _tuple_index(pos, N, face), n, (-1) ** i)
        _add_block(data, rb, _tuple_index(pos, N, t[:-1]), n, (-1) ** (k + 1))
    return IntMatrix(N ** (k + 1) * n, N ** k * n, data)


def _bar_complex(G: FiniteGroup, M: GModule, k: int, cohomology: bool) -> tuple[_PresentedComplex, int]:
    N = G.order - 1
    if not cohomology:
        for j in range(k + 2):
            _bar_guard(G, M, j)
        return _PresentedComplex(M, lambda j: N ** j, lambda j: bar_chain_differential(G, M, j)), k
    # cochains re-indexed as a chain complex: position p holds C^{c-p}
    c = k + 2
    for j in range(k + 3):
        _bar_guard(G, M, j)

    def blocks(p):
        return N ** (c - p) if c - p >= 0 else 0

    return _PresentedComplex(M, blocks, lambda p: bar_cochain_differential(G, M, c - p)), 2


# periodic resolution for cyclic groups


def _norm(A: IntMatrix, n: int) -> IntMatrix:
    total = IntMatrix.zeros(A.rows, A.cols)
    P = IntMatrix.identity(A.rows)
    for _ in range(n):
        total = total + P
        P = P @ A
    return total


def _periodic_complex(M: GModule, generator: int, k: int, cohomology: bool) -> tuple[_PresentedComplex, int]:
    n = M.group.order
    A = M.action[generator]
    I = IntMatrix.identity(M.n_gens)
    diff_minus = A - I
    norm = _norm(A, n)
    if not cohomology:
        return _PresentedComplex(M, lambda j: 1, lambda j: diff_minus if j % 2 else norm), k
    c = k + 2

    def blocks(p):
        return 1 if c - p >= 0 else 0

    # coboundary C^i -> C^{i+1} is A - I for even i, N for odd i
    return _PresentedComplex(M, blocks, lambda p: diff_minus if (c - p) % 2 == 0 else norm), 2


def cyclic_group_homology(n: int, M: GModule, k: int, cohomology: bool = False) -> AbelianGroup:
    """H_k(Z_n; M) from the 2-periodic resolution (maps A - I and the norm)."""
    if k < 0:
        raise ValueError("negative degree")
    G = M.group
    if G.order != n:
        raise GroupError(f"module is over a group of order {G.order}, not {n}")
    gen = G.cyclic_generator()
    if gen is None:
        raise GroupError("group is not cyclic")
    cx, pos = _periodic_complex(M, gen, k, cohomology)
    return cx.homology(pos)


def cyclic_group_cohomology(n: int, M: GModule, k: int) -> AbelianGroup:
    return cyclic_group_homology(n, M, k, cohomology=True)


def _group_homology(G: FiniteGroup, M: GModule, k: int, method: str, cohomology: bool) -> AbelianGroup:
    if k < 0:
        raise ValueError("negative degree")
    if M.group is not G and M.group != G:
        raise GModuleError("module is over a different group")
    if method == "auto":
        method = "periodic" if G.is_cyclic() else "bar"
    if method == "periodic":
        return cyclic_group_homology(G.order, M, k, cohomology)
    if method != "bar":
        raise ValueError(f"unknown method {method!r}")
    cx, pos = _bar_complex(G, M, k, cohomology)
    return cx.homology(pos)


def group_homology(G: FiniteGroup, M: GModule, k: int, method: str = "auto") -> AbelianGroup:
    """H_k(G; M).  ``method`` is 'bar', 'periodic' (cyclic G) or 'auto'."""
    return _group_homology(G, M, k, method, cohomology=False)


def group_cohomology(G: FiniteGroup, M: GModule, k: int, method: str = "auto") -> AbelianGroup:
    """H^k(G; M); same methods as :func:`group_homology`."""
    return _group_homology(G, M, k, method, cohomology=True)


def coinvariants(M: GModule) -> AbelianGroup:
    """M_G = Z^n / (R + sum of images of A_g - I), by direct lattice arithmetic."""
    I = IntMatrix.identity(M.n_gens)
    blocks = [M.relations] + [M.action[g] - I for g in M.group.elements]
    gens = IntMatrix.hstack(blocks, rows=M.n_gens)
    return AbelianGroup.from_invariant_factors(invariant_factors(gens), M.n_gens)


def invariants(M: GModule) -> AbelianGroup:
    """M^G = {m : (A_g - I) m in R for all g} / R."""
    n, r = M.n_gens, M.n_relations
    I = IntMatrix.identity(n)
    G = M.group
    rows = []
    for idx, g in enumerate(G.elements):
        left = M.action[g] - I
        rel = [IntMatrix.zeros(n, r)] * G.order
        rel[idx] = M.relations
        rows.append(IntMatrix.hstack([left] + rel, rows=n))
    big = IntMatrix.vstack(rows, cols=n + G.order * r)
    K = kernel_basis(big)
    proj = IntMatrix.from_columns([c[:n] for c in K.columns()], n) if K.cols else IntMatrix.zeros(n, 0)
    basis = Lattice(proj).basis()
    if basis.cols == 0:
        return AbelianGroup()
    q = LatticeQuotient(basis, M.relations)
    return AbelianGroup.from_orders(q.orders)


# H^2 and extensions


@dataclass
class CocycleClass:
    """One class of H^2(G; M), with a normalized representative cocycle.

    ``representative[(g, h)]`` is a module vector; pairs involving the
    identity are zero.
    """

    representative: dict[tuple[int, int], tuple[int, ...]]
    is_split: bool
    order: int
    coordinates: tuple[int, ...]


@dataclass
class SecondCohomology:
    group: AbelianGroup
    classes: list[CocycleClass]
    complete: bool
    _quotient: LatticeQuotient = field(repr=False)
    _G: FiniteGroup = field(repr=False)
    _M: GModule = field(repr=False)

    def class_of(self, cocycle: Mapping[tuple[int, int], Sequence[int]]) -> tuple[int, ...]:
        """Coordinates of a normalized cocycle's class (same basis as ``classes``)."""
        if not is_cocycle(self._G, self._M, cocycle):
            raise GModuleError("not a cocycle")
        v = _cochain_vector(self._G, self._M, cocycle)
        return tuple(self._quotient.coordinates(v))


def _cochain_vector(G: FiniteGroup, M: GModule, c: Mapping[tuple[int, int], Sequence[int]]) -> list[int]:
    elems = _nondegenerate(G)
    v = []
    for g, h in product(elems, repeat=2):
        v.extend(c.get((g, h), [0] * M.n_gens))
    return v


def _cochain_table(G: FiniteGroup, M: GModule, v: Sequence[int]) -> dict[tuple[int, int], tuple[int, ...]]:
    elems = _nondegenerate(G)
    n = M.n_gens
    table = {(g, h): (0,) * n for g in G.elements for h in G.elements}
    for b, (g, h) in enumerate(product(elems, repeat=2)):
        table[(g, h)] = tuple(v[b * n:(b + 1) * n])
    return table


def is_cocycle(G: FiniteGroup, M: GModule, c: Mapping[tuple[int, int], Sequence[int]]) -> bool:
    """g.c(h,k) - c(gh,k) + c(g,hk) - c(g,h) vanishes in M for all triples."""
    zero = [0] * M.n_gens

    def val(g, h):
        return c.get((g, h), zero)

    for g, h, k in product(G.elements, repeat=3):
        a = M.act(g, val(h, k))
        b, cc, d = val(G.mul(g, h), k), val(g, G.mul(h, k)), val(g, h)
        diff = [a[i] - b[i] + cc[i] - d[i] for i in range(M.n_gens)]
        if not M.is_zero(diff):
            return False
    return True


def second_cohomology(G: FiniteGroup, M: GModule, max_classes: int = 10_000) -> SecondCohomology:
    """H^2(G; M) with explicit normalized cocycles.

    When H^2 is finite (and has at most ``max_classes`` elements) every
    class is listed; otherwise one representative per cyclic generator.
    """
    N = G.order - 1
    for j in range(4):
        _bar_guard(G, M, j)
    n = M.n_gens
    d1 = bar_cochain_differential(G, M, 1)
    d2 = bar_cochain_differential(G, M, 2)
    f2 = N ** 2 * n
    rel3 = block_diagonal([M.relations] * N ** 3)
    ker = kernel_basis(IntMatrix.hstack([d2, rel3], rows=N ** 3 * n))
    cocycles = IntMatrix.from_columns([c[:f2] for c in ker.columns()], f2) if ker.cols else IntMatrix.zeros(f2, 0)
    rel2 = block_diagonal([M.relations] * N ** 2)
    boundaries = IntMatrix.hstack([d1, rel2], rows=f2)
    if cocycles.cols == 0:
        zero = _cochain_table(G, M, [0] * f2)
        return SecondCohomology(AbelianGroup(), [CocycleClass(zero, True, 1, ())], True, None, G, M)  # type: ignore[arg-type]
    q = LatticeQuotient(cocycles, boundaries)
    group = AbelianGroup.from_orders(q.orders)
    classes = []
    finite = all(o > 0 for o in q.orders)
    if finite and (group.order or 1) <= max_classes:
        for coeffs in product(*(range(o) for o in q.orders)):
            v = [0] * f2
            for a, gen in zip(coeffs, q.generators):
                if a:
                    for i, x in enumerate(gen):
                        v[i] += a * x
            order = 1
            for a, o in zip(coeffs, q.orders):
                order = lcm(order, o // gcd(a, o))
            classes.append(CocycleClass(_cochain_table(G, M, v), not any(coeffs), order, tuple(coeffs)))
        complete = True
    else:
        zero = _cochain_table(G, M, [0] * f2)
        classes.append(CocycleClass(zero, True, 1, tuple(0 for _ in q.orders)))
        for i, (gen, o) in enumerate(zip(q.generators, q.orders)):
            coords = tuple(1 if j == i else 0 for j in range(len(q.orders)))
            classes.append(CocycleClass(_cochain_table(G, M, gen), False, o, coords))
        complete = False
    return SecondCohomology(group, classes, complete, q, G, M)


def h2_classes(G: FiniteGroup, M: GModule) -> list[CocycleClass]:
    """Congruence classes of extensions of G by M, one per element of H^2(G; M)."""
    return second_cohomology(G, M).classes


def extension_group(G: FiniteGroup, M: GModule, cocycle: Mapping[tuple[int, int], Sequence[int]]) -> tuple[FiniteGroup, list[tuple[tuple[int, ...], int]]]:
    """Middle group of the extension defined by a cocycle (finite M only).

    Elements are pairs (m, g) with (m, g)(m', g') = (m + g.m' + c(g, g'), gg').
    Returns the group table and the (canonical m, g) label of each index.
    """
    reps = M.elements()
    canon = [M.canonical(v) for v in reps]
    where = {c: i for i, c in enumerate(canon)}
    size = len(reps) * G.order
    zero = [0] * M.n_gens

    def index(v, g):
        return where[M.canonical(v)] * G.order + g

    table = []
    for a in range(size):
        ma, ga = divmod(a, G.order)
        row = []
        for b in range(size):
            mb, gb = divmod(b, G.order)
            gm = M.act(ga, reps[mb])
            c = cocycle.get((ga, gb), zero)
            v = [reps[ma][i] + gm[i] + c[i] for i in range(M.n_gens)]
            row.append(index(v, G.mul(ga, gb)))
        table.append(row)
    labels = [(canon[a // G.order], a % G.order) for a in range(size)]
    names = [f"({','.join(map(str, m))};{G.names[g]})" for m, g in labels]
    return FiniteGroup(table, names, identity=index(zero, G.identity)), labels


@dataclass
class GroupHomologyReport:
    group_order: int
    module: dict
    degree: int
    cohomology: bool
    method: str
    result: AbelianGroup
    seconds: float

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "group_order": self.group_order,
            "module": self.module,
            "degree": self.degree,
            "kind": "cohomology" if self.cohomology else "homology",
            "resolution": self.method,
            "result": self.result.to_dict(),
        }
        if timing:
            out["seconds"] = round(self.seconds, 4)
        return out


def group_homology_report(G: FiniteGroup, M: GModule, k: int, cohomology: bool = False, method: str = "auto") -> GroupHomologyReport:
    used = ("periodic" if G.is_cyclic() else "bar") if method == "auto" else method
    t0 = time.perf_counter()
    fn = group_cohomology if cohomology else group_homology
    res = fn(G, M, k, used)
    return GroupHomologyReport(G.order, M.to_dict(), k, cohomology, used, res, time.perf_counter() - t0)
