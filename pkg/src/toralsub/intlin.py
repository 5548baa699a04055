"""Exact integer linear algebra.

Hermite and Smith normal forms, integer kernels and solves, finitely
generated abelian groups, and a sparse Smith elimination used for the
large coboundary matrices of the bar complex.  Everything is Python
``int``; nothing here ever touches floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class NotASublattice(ValueError):
    pass


class IntMatrix:
    """Immutable integer matrix stored row-major."""

    __slots__ = ("rows", "cols", "_data", "_hash")

    def __init__(self, data: Iterable[Iterable[int]], cols: int | None = None):
        rows = tuple(tuple(int(x) for x in row) for row in data)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for row in rows:
            if len(row) != cols:
                raise ValueError("ragged matrix")
        self.rows = len(rows)
        self.cols = cols
        self._data = rows
        self._hash = None

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls([[0] * cols for _ in range(rows)], cols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], nrows: int | None = None) -> IntMatrix:
        columns = [list(c) for c in columns]
        if nrows is None:
            if not columns:
                raise ValueError("need nrows for an empty column list")
            nrows = len(columns[0])
        return cls([[c[i] for c in columns] for i in range(nrows)], len(columns))

    @classmethod
    def diagonal(cls, entries: Sequence[int]) -> IntMatrix:
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], n)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def entries(self) -> tuple[int, ...]:
        return tuple(x for row in self._data for x in row)

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self._data[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self._data)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def tolist(self) -> list[list[int]]:
        return [list(row) for row in self._data]

    @property
    def T(self) -> IntMatrix:
        return IntMatrix([self.column(j) for j in range(self.cols)], self.rows)

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            ocols = other.columns()
            return IntMatrix(
                [[sum(a * b for a, b in zip(row, c)) for c in ocols] for row in self._data],
                other.cols,
            )
        vec = list(other)
        if len(vec) != self.cols:
            raise ValueError("shape mismatch")
        return tuple(sum(a * b for a, b in zip(row, vec)) for row in self._data)

    def __add__(self, other: IntMatrix) -> IntMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)], self.cols
        )

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)], self.cols
        )

    def __neg__(self) -> IntMatrix:
        return self.scale(-1)

    def scale(self, k: int) -> IntMatrix:
        return IntMatrix([[k * a for a in row] for row in self._data], self.cols)

    def hstack(self, other: IntMatrix) -> IntMatrix:
        if self.rows != other.rows:
            raise ValueError("row mismatch")
        return IntMatrix([r + s for r, s in zip(self._data, other._data)], self.cols + other.cols)

    def vstack(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.cols:
            raise ValueError("column mismatch")
        return IntMatrix(self._data + other._data, self.cols)

    def is_zero(self) -> bool:
        return not any(any(row) for row in self._data)

    def det(self) -> int:
        """Bareiss fraction-free determinant."""
        n = self.rows
        if n != self.cols:
            raise ValueError("determinant of a non-square matrix")
        if n == 0:
            return 1
        a = self.tolist()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k]:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def is_unimodular(self) -> bool:
        return self.rows == self.cols and abs(self.det()) == 1

    def inverse(self) -> IntMatrix:
        """Inverse of a unimodular matrix."""
        inv = rational_inverse(self)
        if any(x.denominator != 1 for row in inv for x in row):
            raise ValueError("matrix is not unimodular")
        return IntMatrix([[int(x) for x in row] for row in inv], self.cols)

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.cols == other.cols and self._data == other._data

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.cols, self._data))
        return self._hash

    def __repr__(self):
        return f"IntMatrix({self.tolist()!r})"

    def __str__(self):
        return "[" + "; ".join(" ".join(str(x) for x in row) for row in self._data) + "]"


def rational_inverse(a: IntMatrix) -> list[list[Fraction]]:
    n = a.rows
    if n != a.cols:
        raise ValueError("inverse of a non-square matrix")
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a.tolist())]
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        m[c], m[p] = m[p], m[c]
        piv = m[c][c]
        m[c] = [x / piv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return [row[n:] for row in m]


def rational_rank(rows: Sequence[Sequence[int]]) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return 0
    rank = 0
    ncols = len(m[0])
    for c in range(ncols):
        p = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[rank], m[p] = m[p], m[rank]
        for i in range(rank + 1, len(m)):
            if m[i][c] != 0:
                f = m[i][c] / m[rank][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[rank])]
        rank += 1
    return rank


# --- Hermite normal form -------------------------------------------------

def hnf(a: IntMatrix) -> IntMatrix:
    """Column Hermite normal form with zero columns dropped.

    The result is lower trapezoidal: each column has a positive pivot in
    a row strictly below the pivot of the previous column, and the
    entries to the left of a pivot lie in [0, pivot).
    """
    m, n = a.shape
    work = [list(c) for c in a.columns()]
    r = 0
    for i in range(m):
        if r == n:
            break
        while True:
            nz = [k for k in range(r, n) if work[k][i]]
            if len(nz) <= 1:
                break
            p = min(nz, key=lambda k: abs(work[k][i]))
            pv = work[p][i]
            cp = work[p]
            for k in nz:
                if k != p:
                    q = work[k][i] // pv
                    if q:
                        ck = work[k]
                        for t in range(i, m):
                            ck[t] -= q * cp[t]
        if not nz:
            continue
        p = nz[0]
        work[r], work[p] = work[p], work[r]
        cr = work[r]
        if cr[i] < 0:
            for t in range(i, m):
                cr[t] = -cr[t]
        pv = cr[i]
        for k in range(r):
            q = work[k][i] // pv
            if q:
                ck = work[k]
                for t in range(i, m):
                    ck[t] -= q * cr[t]
        r += 1
    return IntMatrix.from_columns(work[:r], m) if r else IntMatrix.zeros(m, 0)


# --- Smith normal form ---------------------------------------------------

@dataclass(frozen=True)
class SmithData:
    D: IntMatrix
    U: IntMatrix
    V: IntMatrix
    Uinv: IntMatrix
    Vinv: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.D[i, i] for i in range(min(self.D.shape)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(d for d in self.diagonal if d > 1)


def _smith_lists(a: list[list[int]], m: int, n: int, track: bool = True):
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    Ui = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    Vi = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_add(dst, src, q):
        # row dst += q * row src
        ad, as_ = a[dst], a[src]
        for j in range(n):
            if as_[j]:
                ad[j] += q * as_[j]
        if track:
            ud, us = U[dst], U[src]
            for j in range(m):
                if us[j]:
                    ud[j] += q * us[j]
            for row in Ui:
                if row[dst]:
                    row[src] -= q * row[dst]

    def row_swap(i, k):
        a[i], a[k] = a[k], a[i]
        if track:
            U[i], U[k] = U[k], U[i]
            for row in Ui:
                row[i], row[k] = row[k], row[i]

    def row_neg(i):
        a[i] = [-x for x in a[i]]
        if track:
            U[i] = [-x for x in U[i]]
            for row in Ui:
                row[i] = -row[i]

    def col_add(dst, src, q):
        # col dst += q * col src
        for row in a:
            if row[src]:
                row[dst] += q * row[src]
        if track:
            for row in V:
                if row[src]:
                    row[dst] += q * row[src]
            vd, vs = Vi[dst], Vi[src]
            for j in range(n):
                if vd[j]:
                    vs[j] -= q * vd[j]

    def col_swap(j, k):
        for row in a:
            row[j], row[k] = row[k], row[j]
        if track:
            for row in V:
                row[j], row[k] = row[k], row[j]
            Vi[j], Vi[k] = Vi[k], Vi[j]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        if i != t:
            row_swap(t, i)
        if j != t:
            col_swap(t, j)
        while True:
            p = a[t][t]
            clean = True
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // p
                    row_add(i, t, -q)
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // p
                    col_add(j, t, -q)
                    if a[t][j]:
                        clean = False
            if not clean:
                # move the smallest leftover in row/column t onto the pivot
                cands = [(abs(a[i][t]), i, t) for i in range(t + 1, m) if a[i][t]]
                cands += [(abs(a[t][j]), t, j) for j in range(t + 1, n) if a[t][j]]
                _, i, j = min(cands)
                if i != t:
                    row_swap(t, i)
                if j != t:
                    col_swap(t, j)
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_add(t, bad, 1)
        if a[t][t] < 0:
            row_neg(t)
        t += 1
    return a, U, V, Ui, Vi


def snf(a: IntMatrix) -> SmithData:
    """Smith normal form with U*A*V = D, smallest-magnitude pivoting."""
    m, n = a.shape
    d, U, V, Ui, Vi = _smith_lists(a.tolist(), m, n)
    return SmithData(
        IntMatrix(d, n), IntMatrix(U, m), IntMatrix(V, n), IntMatrix(Ui, m), IntMatrix(Vi, n)
    )


def invariant_factors(a: IntMatrix) -> tuple[int, ...]:
    m, n = a.shape
    d = _smith_lists(a.tolist(), m, n, track=False)[0]
    return tuple(d[i][i] for i in range(min(m, n)) if d[i][i] > 1)


def kernel(a: IntMatrix) -> IntMatrix:
    """Basis (as columns) of the integer kernel {x : A x = 0}, in HNF."""
    s = snf(a)
    r = s.rank
    cols = [s.V.column(j) for j in range(r, a.cols)]
    if not cols:
        return IntMatrix.zeros(a.cols, 0)
    return hnf(IntMatrix.from_columns(cols, a.cols))


def solve(a: IntMatrix, b: Sequence[int]) -> tuple[int, ...] | None:
    """An integer solution of A x = b, or None if there is none."""
    s = snf(a)
    c = s.U @ b
    diag = s.diagonal
    y = [0] * a.cols
    for i, ci in enumerate(c):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if ci:
                return None
        else:
            if ci % d:
                return None
            y[i] = ci // d
    return s.V @ y


def solve_matrix(a: IntMatrix, b: IntMatrix) -> IntMatrix | None:
    cols = []
    for col in b.columns():
        x = solve(a, col)
        if x is None:
            return None
        cols.append(x)
    if not cols:
        return IntMatrix.zeros(a.cols, 0)
    return IntMatrix.from_columns(cols, a.cols)


# --- finitely generated abelian groups -----------------------------------

def _prime_powers(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            q = 1
            while n % p == 0:
                n //= p
                q *= p
            out.append((p, q))
        p += 1
    if n > 1:
        out.append((n, n))
    return out


@dataclass(frozen=True)
class FinAb:
    """Z^free_rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k with d_i | d_{i+1}, d_i >= 2."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        t = tuple(self.torsion)
        if any(d < 2 for d in t) or any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ValueError(f"not an invariant-factor chain: {t}")
        object.__setattr__(self, "torsion", t)

    @classmethod
    def from_diagonal(cls, entries: Iterable[int]) -> FinAb:
        """Normalise an arbitrary diagonal presentation Z/e_1 ⊕ ... (0 means Z)."""
        free = 0
        by_prime: dict[int, list[int]] = {}
        for e in entries:
            e = abs(int(e))
            if e == 0:
                free += 1
            elif e > 1:
                for p, q in _prime_powers(e):
                    by_prime.setdefault(p, []).append(q)
        k = max((len(v) for v in by_prime.values()), default=0)
        inv = [1] * k
        for qs in by_prime.values():
            qs.sort(reverse=True)
            for i, q in enumerate(qs):
                inv[k - 1 - i] *= q
        return cls(free, tuple(inv))

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self):
        if self.free_rank:
            return math.inf
        return math.prod(self.torsion)

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def short(self) -> str:
        """Compact notation: '0', '2', '2^4', 'Z', 'Z+2^2'."""
        if self.is_trivial():
            return "0"
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        i = 0
        t = self.torsion
        while i < len(t):
            j = i
            while j < len(t) and t[j] == t[i]:
                j += 1
            parts.append(str(t[i]) if j - i == 1 else f"{t[i]}^{j - i}")
            i = j
        return "+".join(parts)

    def __str__(self):
        if self.is_trivial():
            return "0"
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]
        return " ⊕ ".join(parts)


def quotient(sub: IntMatrix, sup: IntMatrix) -> FinAb:
    """Structure of (column span of sup) / (column span of sub)."""
    return QuotientMap(sub, sup).group


class QuotientMap:
    """Coordinates on B/A for column lattices A ⊆ B.

    ``project`` sends a vector of span(B) to its coordinates: torsion
    coordinates reduced mod the invariant factors, then free coordinates.
    """

    def __init__(self, sub: IntMatrix, sup: IntMatrix):
        if sub.rows != sup.rows:
            raise ValueError("ambient mismatch")
        self.basis = hnf(sup)
        k = self.basis.cols
        x = solve_matrix(self.basis, hnf(sub)) if k else None
        if x is None:
            if hnf(sub).cols == 0:
                x = IntMatrix.zeros(k, 0)
            else:
                raise NotASublattice("sub is not contained in sup")
        s = snf(x)
        diag = list(s.diagonal) + [0] * (k - len(s.diagonal))
        self._smith = s
        self._diag = diag
        self.torsion_index = [i for i, d in enumerate(diag) if d > 1]
        self.free_index = [i for i, d in enumerate(diag) if d == 0]
        self.group = FinAb(len(self.free_index), tuple(diag[i] for i in self.torsion_index))

    def _coords(self, vec: Sequence[int]) -> tuple[int, ...]:
        c = solve(self.basis, vec)
        if c is None:
            raise NotASublattice("vector not in the ambient lattice")
        return self._smith.U @ c

    def project(self, vec: Sequence[int]) -> tuple[int, ...]:
        y = self._coords(vec)
        tors = tuple(y[i] % self._diag[i] for i in self.torsion_index)
        return tors + tuple(y[i] for i in self.free_index)

    def torsion_generators(self) -> list[tuple[int, ...]]:
        """Vectors of span(B) projecting to the torsion unit vectors."""
        gens = []
        for i in self.torsion_index:
            col = self._smith.Uinv.column(i)
            gens.append(self.basis @ col)
        return gens


# --- sparse Smith elimination --------------------------------------------

class SparseSmith:
    """Smith data for a large sparse integer matrix.

    Unit pivots are eliminated first (Markowitz order) while the row and
    column operations are logged; the small residual block is handed to
    the dense ``snf``.  The log gives U, U^{-1} and V implicitly, which is
    all the cohomology code needs: projection to cokernel coordinates,
    lifting of cokernel generators, and solving A x = b.
    """

    def __init__(self, rows: Sequence[dict[int, int]], ncols: int, kernel=None):
        from . import kernels

        self.nrows = len(rows)
        self.ncols = ncols
        elim = (kernel or kernels).unit_pivot_eliminate(rows, ncols)
        self.pivots, self.row_log, self.col_log, residual = elim
        self.pivot_rows = {p for p, _, _ in self.pivots}
        self.pivot_cols = {q for _, q, _ in self.pivots}
        res_rows = sorted(i for i, r in residual.items() if r)
        res_cols = sorted({j for i in res_rows for j in residual[i]})
        self.res_rows = res_rows
        self.res_cols = res_cols
        ci = {j: k for k, j in enumerate(res_cols)}
        dense = [[0] * len(res_cols) for _ in res_rows]
        for a, i in enumerate(res_rows):
            for j, v in residual[i].items():
                dense[a][ci[j]] = v
        if res_rows and res_cols:
            self._res = snf(IntMatrix(dense, len(res_cols)))
            diag = list(self._res.diagonal)
        else:
            self._res = None
            diag = []
        self._res_diag = diag + [0] * (len(res_rows) - len(diag))
        self.rank = len(self.pivots) + sum(1 for d in diag if d)
        self.torsion_positions = [t for t, d in enumerate(self._res_diag) if d > 1]
        self.invariant_factors = tuple(self._res_diag[t] for t in self.torsion_positions)

    # U acts on row-space vectors (length nrows)
    def apply_U(self, vec: Sequence[int]) -> list[int]:
        z = list(vec)
        for dst, src, f in self.row_log:
            if z[src]:
                z[dst] += f * z[src]
        return z

    def apply_Uinv(self, vec: Sequence[int]) -> list[int]:
        z = list(vec)
        for dst, src, f in reversed(self.row_log):
            if z[src]:
                z[dst] -= f * z[src]
        return z

    def apply_V(self, vec: Sequence[int]) -> list[int]:
        y = list(vec)
        for dst, src, f in reversed(self.col_log):
            if y[dst]:
                y[src] += f * y[dst]
        return y

    def _residual_coords(self, z: Sequence[int]) -> tuple[int, ...]:
        if self._res is None:
            return tuple(z[i] for i in self.res_rows)
        return self._res.U @ [z[i] for i in self.res_rows]

    def cokernel_coordinates(self, vec: Sequence[int]) -> tuple[int, ...]:
        """Torsion coordinates of vec in Z^nrows / image, reduced mod d_t."""
        w = self._residual_coords(self.apply_U(vec))
        return tuple(w[t] % self._res_diag[t] for t in self.torsion_positions)

    def torsion_generator(self, k: int) -> list[int]:
        """A vector whose class is the k-th torsion generator of the cokernel."""
        t = self.torsion_positions[k]
        z = [0] * self.nrows
        if self._res is None:
            z[self.res_rows[t]] = 1
        else:
            col = self._res.Uinv.column(t)
            for a, i in enumerate(self.res_rows):
                z[i] = col[a]
        return self.apply_Uinv(z)

    def solve(self, b: Sequence[int]) -> list[int] | None:
        """An integer x with A x = b, or None."""
        z = self.apply_U(b)
        y = [0] * self.ncols
        for p, q, u in self.pivots:
            y[q] = u * z[p]
        handled = self.pivot_rows | set(self.res_rows)
        for i in range(self.nrows):
            if i not in handled and z[i]:
                return None
        if self.res_rows:
            w = self._residual_coords(z)
            yr = [0] * len(self.res_cols)
            for t, wt in enumerate(w):
                d = self._res_diag[t]
                if d == 0:
                    if wt:
                        return None
                elif wt % d:
                    return None
                elif t < len(yr):
                    yr[t] = wt // d
            if self._res is not None:
                yr = self._res.V @ yr
            for k, j in enumerate(self.res_cols):
                y[j] = yr[k]
        return self.apply_V(y)
