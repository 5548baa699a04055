"""Sublattices of Z^r as canonical values.

A Lattice is stored by its column Hermite normal form, so equality of
lattices is equality of fields.  Besides the lattice operations this
module holds the shortest-vector statistic ``mu`` (max-norm) and the
dual presentation of an inclusion Λ^S ⊆ Λ^0.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .intlin import (
    IntMatrix,
    QuotientMap,
    hnf,
    kernel,
    rational_inverse,
    rational_rank,
    snf,
    solve_matrix,
)


class AmbientMismatch(ValueError):
    pass


class NotContained(ValueError):
    pass


class ZeroLattice(ValueError):
    pass


class Lattice:
    """Column span of a set of integer vectors in Z^r."""

    __slots__ = ("ambient_rank", "basis", "_pivots")

    def __init__(self, generators, ambient_rank: int | None = None):
        if isinstance(generators, IntMatrix):
            m = generators
        else:
            cols = [tuple(int(x) for x in c) for c in generators]
            if ambient_rank is None:
                if not cols:
                    raise ValueError("ambient_rank needed for an empty generator list")
                ambient_rank = len(cols[0])
            m = IntMatrix.from_columns(cols, ambient_rank) if cols else IntMatrix.zeros(ambient_rank, 0)
        if ambient_rank is not None and m.rows != ambient_rank:
            raise AmbientMismatch("generator length differs from ambient rank")
        self.ambient_rank = m.rows
        self.basis = hnf(m)
        piv = []
        for j in range(self.basis.cols):
            col = self.basis.column(j)
            piv.append(next(i for i, x in enumerate(col) if x))
        self._pivots = tuple(piv)

    @classmethod
    def ambient(cls, r: int) -> Lattice:
        return cls(IntMatrix.identity(r))

    @classmethod
    def zero(cls, r: int) -> Lattice:
        return cls(IntMatrix.zeros(r, 0))

    @property
    def rank(self) -> int:
        return self.basis.cols

    @property
    def corank(self) -> int:
        return self.ambient_rank - self.rank

    def is_full_rank(self) -> bool:
        return self.rank == self.ambient_rank

    def columns(self) -> list[tuple[int, ...]]:
        return self.basis.columns()

    def coordinates(self, vec: Sequence[int]) -> tuple[int, ...] | None:
        """Coefficients of vec in the canonical basis, or None if vec is not in the lattice."""
        v = list(vec)
        if len(v) != self.ambient_rank:
            raise AmbientMismatch("vector length differs from ambient rank")
        coeffs = []
        for j, p in enumerate(self._pivots):
            col = self.basis.column(j)
            if v[p] % col[p]:
                return None
            c = v[p] // col[p]
            coeffs.append(c)
            if c:
                for i in range(p, len(v)):
                    v[i] -= c * col[i]
        if any(v):
            return None
        return tuple(coeffs)

    def __contains__(self, vec) -> bool:
        return self.coordinates(vec) is not None

    def contains(self, other: Lattice) -> bool:
        _check_ambient(self, other)
        return all(c in self for c in other.columns())

    def __le__(self, other: Lattice) -> bool:
        return other.contains(self)

    def __ge__(self, other: Lattice) -> bool:
        return self.contains(other)

    def scale(self, c: int) -> Lattice:
        return Lattice(self.basis.scale(c))

    def image(self, a: IntMatrix) -> Lattice:
        return Lattice(a @ self.basis)

    def __eq__(self, other):
        return isinstance(other, Lattice) and self.basis == other.basis

    def __hash__(self):
        return hash(self.basis)

    def sort_key(self):
        return (self.basis.rows, self.basis.cols, self.basis.entries)

    def tolist(self) -> list[list[int]]:
        """Row-major canonical basis matrix."""
        return self.basis.tolist()

    def label(self) -> str:
        cols = self.columns()
        return "<" + ",".join("(" + ",".join(map(str, c)) + ")" for c in cols) + ">" if cols else "<0>"

    def __repr__(self):
        return f"Lattice({self.label()})"


def _check_ambient(*lats: Lattice) -> None:
    if len({l.ambient_rank for l in lats}) > 1:
        raise AmbientMismatch("lattices live in different ambient ranks")


def lattice_sum(*lats: Lattice) -> Lattice:
    if not lats:
        raise ValueError("need at least one lattice")
    _check_ambient(*lats)
    cols = [c for l in lats for c in l.columns()]
    return Lattice(cols, lats[0].ambient_rank)


def intersect(a: Lattice, b: Lattice) -> Lattice:
    _check_ambient(a, b)
    r = a.ambient_rank
    if a.rank == 0 or b.rank == 0:
        return Lattice.zero(r)
    k = kernel(a.basis.hstack(-b.basis))
    cols = []
    for j in range(k.cols):
        x = k.column(j)[: a.rank]
        cols.append(a.basis @ x)
    return Lattice(cols, r)


def index(sub: Lattice, sup: Lattice):
    """[sup : sub], or math.inf when the ranks differ."""
    _check_ambient(sub, sup)
    if not sup.contains(sub):
        raise NotContained("sub is not contained in sup")
    if sub.rank != sup.rank:
        return math.inf
    return QuotientMap(sub.basis, sup.basis).group.order()


def is_cofree(sub: Lattice, sup: Lattice) -> bool:
    _check_ambient(sub, sup)
    if not sup.contains(sub):
        raise NotContained("sub is not contained in sup")
    return not QuotientMap(sub.basis, sup.basis).group.torsion


def saturation(l: Lattice) -> Lattice:
    """The smallest cofree lattice containing l: (l ⊗ Q) ∩ Z^r."""
    if l.rank == 0:
        return l
    s = snf(l.basis)
    return Lattice([s.Uinv.column(j) for j in range(l.rank)], l.ambient_rank)


# --- shortest vector in the max-norm --------------------------------------

def _maxnorm(v) -> int:
    return max(abs(x) for x in v)


def _gauss_reduce(b1, b2):
    def dot(u, v):
        return sum(x * y for x, y in zip(u, v))

    if dot(b1, b1) > dot(b2, b2):
        b1, b2 = b2, b1
    while True:
        n = dot(b1, b1)
        q = math.floor(Fraction(dot(b1, b2), n) + Fraction(1, 2))
        b2 = [y - q * x for x, y in zip(b1, b2)]
        if dot(b2, b2) < n:
            b1, b2 = b2, b1
        else:
            return b1, b2


def mu(l: Lattice) -> int:
    """min { |λ|_∞ : 0 ≠ λ ∈ l }, exactly.

    The coefficient box is derived from a Cramer bound: if P is an
    invertible square block of rows of the basis then any vector of
    max-norm ≤ m has coefficients |c_i| ≤ m·Σ_j |P^{-1}_{ij}|.
    """
    if l.rank == 0:
        raise ZeroLattice("mu of the zero lattice")
    basis = [list(c) for c in l.columns()]
    if len(basis) == 2:
        basis = list(_gauss_reduce(*basis))
    best = min(_maxnorm(b) for b in basis)
    k = len(basis)
    if k == 1:
        return best
    rows = []
    for i in range(l.ambient_rank):
        trial = rows + [i]
        if rational_rank([[b[t] for b in basis] for t in trial]) == len(trial):
            rows = trial
        if len(rows) == k:
            break
    p = IntMatrix([[b[t] for b in basis] for t in rows], k)
    pinv = rational_inverse(p)
    weight = [sum(abs(x) for x in row) for row in pinv]
    radius = [math.floor(best * w) for w in weight]
    for c in itertools.product(*(range(-R, R + 1) for R in radius)):
        if not any(c):
            continue
        v = [sum(ci * b[t] for ci, b in zip(c, basis)) for t in range(l.ambient_rank)]
        n = _maxnorm(v)
        if 0 < n < best:
            best = n
    return best


# --- duality ---------------------------------------------------------------

@dataclass(frozen=True)
class DualPresentation:
    """Inclusion Λ^S ⊆ Λ^0 in coordinates.

    X has the Λ^S basis as columns in Λ^0 coordinates; Xt = X^T is the
    restriction Λ_0 → Λ_S in the dual bases.  ``transport`` carries an
    action matrix A on Λ^0 coordinates to the matrix B on Λ^S with A X = X B.
    """

    X: IntMatrix
    Xt: IntMatrix
    transport: Callable[[IntMatrix], IntMatrix]


def dual_presentation(sup: Lattice, sub: Lattice) -> DualPresentation:
    _check_ambient(sup, sub)
    if sub.rank == 0:
        x = IntMatrix.zeros(sup.rank, 0)
    else:
        x = solve_matrix(sup.basis, sub.basis)
        if x is None:
            raise NotContained("sub is not contained in sup")

    def transport(a: IntMatrix) -> IntMatrix:
        if x.cols == 0:
            return IntMatrix.zeros(0, 0)
        b = solve_matrix(x, a @ x)
        if b is None:
            raise ValueError("sublattice is not invariant under the given matrix")
        return b

    return DualPresentation(x, x.T, transport)

