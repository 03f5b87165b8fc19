"""Exact integer matrices, Smith normal form and lattice arithmetic.

Everything here works over Python integers, so intermediate entries can grow
without wrapping.  Matrices are stored sparsely (row -> {col: value}) because
boundary maps and bar differentials are overwhelmingly zero; the dense Smith
reduction converts on entry.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class IntMatrix:
    """Integer matrix with sparse row-major storage.

    Treated as immutable once constructed.
    """

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, data: dict[int, dict[int, int]] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError(f"bad shape {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        clean: dict[int, dict[int, int]] = {}
        for i, row in (data or {}).items():
            r = {j: v for j, v in row.items() if v}
            if r:
                if not 0 <= i < rows or any(not 0 <= j < cols for j in r):
                    raise IndexError(f"entry outside {rows}x{cols} matrix in row {i}")
                clean[i] = r
        self._data = clean

    # construction

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, {i: {i: 1} for i in range(n)})

    @classmethod
    def diagonal(cls, values: Sequence[int], rows: int | None = None, cols: int | None = None) -> IntMatrix:
        rows = len(values) if rows is None else rows
        cols = len(values) if cols is None else cols
        return cls(rows, cols, {i: {i: v} for i, v in enumerate(values)})

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        if cols is None:
            cols = len(rows[0]) if rows else 0
        data = {}
        for i, row in enumerate(rows):
            if len(row) != cols:
                raise ValueError(f"row {i} has length {len(row)}, expected {cols}")
            data[i] = {j: int(v) for j, v in enumerate(row) if v}
        return cls(len(rows), cols, data)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> IntMatrix:
        data: dict[int, dict[int, int]] = defaultdict(dict)
        for j, col in enumerate(columns):
            if len(col) != rows:
                raise ValueError(f"column {j} has length {len(col)}, expected {rows}")
            for i, v in enumerate(col):
                if v:
                    data[i][j] = int(v)
        return cls(rows, len(columns), data)

    @classmethod
    def from_triplets(cls, rows: int, cols: int, triplets: Iterable[tuple[int, int, int]]) -> IntMatrix:
        data: dict[int, dict[int, int]] = defaultdict(dict)
        for i, j, v in triplets:
            data[i][j] = data[i].get(j, 0) + v
        return cls(rows, cols, data)

    @staticmethod
    def hstack(blocks: Sequence[IntMatrix], rows: int | None = None) -> IntMatrix:
        if rows is None:
            if not blocks:
                raise ValueError("hstack of nothing needs an explicit row count")
            rows = blocks[0].rows
        data: dict[int, dict[int, int]] = defaultdict(dict)
        off = 0
        for b in blocks:
            if b.rows != rows:
                raise ValueError("hstack row mismatch")
            for i, r in b._data.items():
                tgt = data[i]
                for j, v in r.items():
                    tgt[off + j] = v
            off += b.cols
        return IntMatrix(rows, off, data)

    @staticmethod
    def vstack(blocks: Sequence[IntMatrix], cols: int | None = None) -> IntMatrix:
        if cols is None:
            if not blocks:
                raise ValueError("vstack of nothing needs an explicit column count")
            cols = blocks[0].cols
        data = {}
        off = 0
        for b in blocks:
            if b.cols != cols:
                raise ValueError("vstack column mismatch")
            for i, r in b._data.items():
                data[off + i] = dict(r)
            off += b.rows
        return IntMatrix(off, cols, data)

    # access

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self._data.values())

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        return self._data.get(i, {}).get(j, 0)

    def row_dict(self, i: int) -> dict[int, int]:
        return self._data.get(i, {})

    def items(self) -> Iterator[tuple[int, int, int]]:
        for i in sorted(self._data):
            r = self._data[i]
            for j in sorted(r):
                yield i, j, r[j]

    def to_rows(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for i, r in self._data.items():
            row = out[i]
            for j, v in r.items():
                row[j] = v
        return out

    def column(self, j: int) -> list[int]:
        return [self._data[i][j] if i in self._data and j in self._data[i] else 0 for i in range(self.rows)]

    def columns(self) -> list[list[int]]:
        cols = [[0] * self.rows for _ in range(self.cols)]
        for i, r in self._data.items():
            for j, v in r.items():
                cols[j][i] = v
        return cols

    def select_columns(self, idx: Sequence[int]) -> IntMatrix:
        pos = {j: k for k, j in enumerate(idx)}
        data = {}
        for i, r in self._data.items():
            nr = {pos[j]: v for j, v in r.items() if j in pos}
            if nr:
                data[i] = nr
        return IntMatrix(self.rows, len(idx), data)

    def is_zero(self) -> bool:
        return not self._data

    def is_square(self) -> bool:
        return self.rows == self.cols

    # arithmetic

    def transpose(self) -> IntMatrix:
        data: dict[int, dict[int, int]] = defaultdict(dict)
        for i, r in self._data.items():
            for j, v in r.items():
                data[j][i] = v
        return IntMatrix(self.cols, self.rows, data)

    @property
    def T(self) -> IntMatrix:
        return self.transpose()

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        odata = other._data
        data = {}
        for i, r in self._data.items():
            acc: dict[int, int] = {}
            for k, a in r.items():
                orow = odata.get(k)
                if orow:
                    for j, b in orow.items():
                        acc[j] = acc.get(j, 0) + a * b
            data[i] = acc
        return IntMatrix(self.rows, other.cols, data)

    def apply(self, vec: Sequence[int]) -> list[int]:
        if len(vec) != self.cols:
            raise ValueError(f"vector of length {len(vec)} for {self.shape} matrix")
        out = [0] * self.rows
        for i, r in self._data.items():
            out[i] = sum(v * vec[j] for j, v in r.items())
        return out

    def _combine(self, other: IntMatrix, sign: int) -> IntMatrix:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        data = {i: dict(r) for i, r in self._data.items()}
        for i, r in other._data.items():
            tgt = data.setdefault(i, {})
            for j, v in r.items():
                tgt[j] = tgt.get(j, 0) + sign * v
        return IntMatrix(self.rows, self.cols, data)

    def __add__(self, other: IntMatrix) -> IntMatrix:
        return self._combine(other, 1)

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        return self._combine(other, -1)

    def __neg__(self) -> IntMatrix:
        return self.scale(-1)

    def scale(self, c: int) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, {i: {j: c * v for j, v in r.items()} for i, r in self._data.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, tuple(self.items())))

    def __repr__(self) -> str:
        if self.rows * self.cols <= 64:
            return f"IntMatrix({self.to_rows()})"
        return f"IntMatrix(<{self.rows}x{self.cols}, nnz={self.nnz}>)"

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if not self.is_square():
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        M = self.to_rows()
        sign, prev = 1, 1
        for k in range(n - 1):
            if M[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if M[i][k]), None)
                if swap is None:
                    return 0
                M[k], M[swap] = M[swap], M[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            prev = M[k][k]
        return sign * M[n - 1][n - 1]


def block_diagonal(blocks: Sequence[IntMatrix]) -> IntMatrix:
    data = {}
    r_off = c_off = 0
    for b in blocks:
        for i, r in b._data.items():
            data[r_off + i] = {c_off + j: v for j, v in r.items()}
        r_off += b.rows
        c_off += b.cols
    return IntMatrix(r_off, c_off, data)


# Smith normal form


@dataclass(frozen=True)
class SNFResult:
    """``U @ A @ V == S`` with ``U``, ``V`` unimodular.

    ``U_inv`` and ``V_inv`` are the exact inverses, tracked during the
    reduction so callers never need a rational inverse.
    """

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix
    U_inv: IntMatrix
    V_inv: IntMatrix

    @property
    def diagonal(self) -> list[int]:
        """Nonzero invariant factors d_1 | d_2 | ... (length = rank)."""
        out = []
        for i in range(min(self.S.rows, self.S.cols)):
            d = self.S[i, i]
            if d == 0:
                break
            out.append(d)
        return out

    @property
    def rank(self) -> int:
        return len(self.diagonal)


def _identity_rows(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _snf_dense(M: list[list[int]], m: int, n: int, track: bool):
    """In-place Smith reduction of the dense m x n matrix ``M``.

    Returns (U, U_inv, V, V_inv) as dense lists when ``track`` is set.
    """
    U = Ui = V = Vi = None
    if track:
        U, Ui, V, Vi = _identity_rows(m), _identity_rows(m), _identity_rows(n), _identity_rows(n)

    def row_add(dst, src, q):
        rs = M[src]
        M[dst] = [a + q * b for a, b in zip(M[dst], rs)]
        if track:
            U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]
            for row in Ui:
                row[src] -= q * row[dst]

    def row_swap(a, b):
        M[a], M[b] = M[b], M[a]
        if track:
            U[a], U[b] = U[b], U[a]
            for row in Ui:
                row[a], row[b] = row[b], row[a]

    def row_neg(a):
        M[a] = [-x for x in M[a]]
        if track:
            U[a] = [-x for x in U[a]]
            for row in Ui:
                row[a] = -row[a]

    def col_add(dst, src, q):
        for row in M:
            if row[src]:
                row[dst] += q * row[src]
        if track:
            for row in V:
                row[dst] += q * row[src]
            Vi[src] = [a - q * b for a, b in zip(Vi[src], Vi[dst])]

    def col_swap(a, b):
        for row in M:
            row[a], row[b] = row[b], row[a]
        if track:
            for row in V:
                row[a], row[b] = row[b], row[a]
            Vi[a], Vi[b] = Vi[b], Vi[a]

    def move_to(t, i, j):
        if i != t:
            row_swap(t, i)
        if j != t:
            col_swap(t, j)

    t = 0
    while t < min(m, n):
        best, bi, bj = 0, -1, -1
        for i in range(t, m):
            row = M[i]
            for j in range(t, n):
                v = row[j]
                if v and (best == 0 or abs(v) < best):
                    best, bi, bj = abs(v), i, j
                    if best == 1:
                        break
            if best == 1:
                break
        if best == 0:
            break
        move_to(t, bi, bj)
        while True:
            p = M[t][t]
            clean = True
            for i in range(t + 1, m):
                if M[i][t]:
                    row_add(i, t, -(M[i][t] // p))
                    if M[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if M[t][j]:
                    col_add(j, t, -(M[t][j] // p))
                    if M[t][j]:
                        clean = False
            if not clean:
                best, bi, bj = abs(p), t, t
                for i in range(t + 1, m):
                    if M[i][t] and abs(M[i][t]) < best:
                        best, bi, bj = abs(M[i][t]), i, t
                for j in range(t + 1, n):
                    if M[t][j] and abs(M[t][j]) < best:
                        best, bi, bj = abs(M[t][j]), t, j
                move_to(t, bi, bj)
                continue
            bad = next(
                (i for i in range(t + 1, m) if any(M[i][j] % p for j in range(t + 1, n))),
                None,
            )
            if bad is None:
                break
            row_add(t, bad, 1)
        if M[t][t] < 0:
            row_neg(t)
        t += 1
    return U, Ui, V, Vi


def smith_normal_form(A: IntMatrix) -> SNFResult:
    """Smith normal form with unimodular transforms: ``U @ A @ V == S``."""
    m, n = A.shape
    M = A.to_rows()
    U, Ui, V, Vi = _snf_dense(M, m, n, track=True)
    return SNFResult(
        U=IntMatrix.from_rows(U, m),
        S=IntMatrix.from_rows(M, n),
        V=IntMatrix.from_rows(V, n),
        U_inv=IntMatrix.from_rows(Ui, m),
        V_inv=IntMatrix.from_rows(Vi, n),
    )


def _dense_diagonal(rows: list[list[int]], n: int) -> list[int]:
    m = len(rows)
    if m == 0 or n == 0:
        return []
    _snf_dense(rows, m, n, track=False)
    out = []
    for i in range(min(m, n)):
        if rows[i][i] == 0:
            break
        out.append(rows[i][i])
    return out


def invariant_factors(A: IntMatrix) -> list[int]:
    """Nonzero Smith invariant factors of ``A`` (no transforms).

    Unit pivots are eliminated first on the sparse rows, choosing in each
    pass the unit entry whose column is shortest to limit fill-in; the
    remaining block goes through the dense reduction.
    """
    rows = {i: dict(r) for i, r in A._data.items()}
    cols: dict[int, set[int]] = defaultdict(set)
    for i, r in rows.items():
        for j in r:
            cols[j].add(i)

    units = 0
    progress = True
    while progress:
        progress = False
        for r in sorted(rows, key=lambda i: len(rows[i])):
            prow = rows.get(r)
            if prow is None:
                continue
            c, best = None, None
            for j, v in prow.items():
                if v == 1 or v == -1:
                    cost = len(cols[j])
                    if best is None or cost < best:
                        c, best = j, cost
                        if cost == 1:
                            break
            if c is None:
                continue
            p = prow[c]
            del rows[r]
            for j in prow:
                cols[j].discard(r)
            for i in list(cols[c]):
                row = rows[i]
                f = row[c] * p
                for j, v in prow.items():
                    nv = row.get(j, 0) - f * v
                    if nv:
                        if j not in row:
                            cols[j].add(i)
                        row[j] = nv
                    elif j in row:
                        del row[j]
                        cols[j].discard(i)
                if not row:
                    del rows[i]
            del cols[c]
            units += 1
            progress = True

    rest = [i for i in rows if rows[i]]
    used = sorted({j for i in rest for j in rows[i]})
    pos = {j: k for k, j in enumerate(used)}
    dense = []
    for i in rest:
        line = [0] * len(used)
        for j, v in rows[i].items():
            line[pos[j]] = v
        dense.append(line)
    return [1] * units + _dense_diagonal(dense, len(used))


def matrix_rank(A: IntMatrix) -> int:
    return len(invariant_factors(A))


# lattices


class Lattice:
    """Sublattice of Z^n spanned by the columns of a matrix."""

    def __init__(self, gens: IntMatrix):
        self.gens = gens
        self.ambient = gens.rows
        self._snf = smith_normal_form(gens)
        self._d = self._snf.diagonal

    @property
    def rank(self) -> int:
        return len(self._d)

    def solve(self, v: Sequence[int]) -> list[int] | None:
        """Integer y with ``gens @ y == v``, or None when v is outside."""
        c = self._snf.U.apply(v)
        r = len(self._d)
        if any(c[i] for i in range(r, len(c))):
            return None
        w = [0] * self.gens.cols
        for i, d in enumerate(self._d):
            if c[i] % d:
                return None
            w[i] = c[i] // d
        return self._snf.V.apply(w)

    def contains(self, v: Sequence[int]) -> bool:
        return self.solve(v) is not None

    def basis(self) -> IntMatrix:
        """Full-column-rank basis of the lattice (ambient x rank)."""
        Ui = self._snf.U_inv
        cols = []
        for i, d in enumerate(self._d):
            cols.append([d * x for x in Ui.column(i)])
        return IntMatrix.from_columns(cols, self.ambient)


def solve_matrix(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    """Integer X with ``A @ X == B``; raises ValueError when none exists."""
    lat = Lattice(A)
    cols = []
    for j, col in enumerate(B.columns()):
        y = lat.solve(col)
        if y is None:
            raise ValueError(f"column {j} is not in the integer span")
        cols.append(y)
    return IntMatrix.from_columns(cols, A.cols)


def kernel_basis(A: IntMatrix) -> IntMatrix:
    """Basis of the integer kernel of ``A`` as columns (cols x nullity)."""
    snf = smith_normal_form(A)
    r = snf.rank
    return snf.V.select_columns(list(range(r, A.cols)))


def column_lattice_basis(A: IntMatrix) -> IntMatrix:
    """Independent columns spanning the same lattice as the columns of A."""
    return Lattice(A).basis()


class LatticeQuotient:
    """The abelian group Z/B for lattices B <= Z <= Z^n.

    ``basis`` is a full-column-rank basis of Z; ``sub`` has columns in Z.
    After construction, ``orders`` lists the cyclic orders of the
    generators (0 means infinite order) and ``generators`` are vectors of
    Z^n whose classes generate Z/B with those orders.
    """

    def __init__(self, basis: IntMatrix, sub: IntMatrix):
        if basis.rows != sub.rows:
            raise ValueError("basis and sublattice live in different ambient spaces")
        self.basis = basis
        self._zlat = Lattice(basis)
        if self._zlat.rank != basis.cols:
            raise ValueError("basis columns are not independent")
        Y = solve_matrix(basis, sub)
        snf = smith_normal_form(Y)
        self._P = snf.U
        d = snf.diagonal
        s = basis.cols
        full = d + [0] * (s - len(d))
        change = basis @ snf.U_inv
        self._keep = [i for i, x in enumerate(full) if x != 1]
        self.orders = [full[i] for i in self._keep]
        gen_cols = change.columns()
        self.generators = [gen_cols[i] for i in self._keep]

    def coordinates(self, v: Sequence[int]) -> list[int]:
        """Coordinates of v (an element of Z) against ``generators``.

        Torsion coordinates are reduced into [0, order).
        """
        c = self._zlat.solve(v)
        if c is None:
            raise ValueError("vector is not in the lattice Z")
        w = self._P.apply(c)
        out = []
        for i, o in zip(self._keep, self.orders):
            out.append(w[i] % o if o else w[i])
        return out
