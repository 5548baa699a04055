"""Integral cohomology H^i(W; M) from the inhomogeneous bar complex.

Cochains of degree n are functions W^n → M, stored as integer vectors
with coordinate (tuple index)·rank + component, where the tuple
(g_1, ..., g_n) has index Σ g_k |W|^{n-k}.  The coboundary is

    (δf)(g_1..g_{n+1}) = f(g_1..g_n)^{g_{n+1}}
                         + Σ_i (-1)^{n+1-i} f(.., g_i g_{i+1}, ..)
                         + (-1)^{n+1} f(g_2..g_{n+1})

which in degrees 0, 1, 2 reads m^v - m, g(v)^w - g(vw) + g(w) and
f(u,v)^w + f(uv,w) - f(u,vw) - f(v,w).

For i > 0 the group H^i(W; M) is finite, so it equals the torsion of the
cokernel of δ^{i-1}; only that one matrix has to be brought to Smith form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy import sparse

from .intlin import FinAb, IntMatrix, SparseSmith, kernel, solve
from .wgroup import WModule

DEFAULT_BUDGET = 2_000_000


class BudgetExceeded(RuntimeError):
    pass


class NotEquivariant(ValueError):
    pass


class CochainComplex:
    def __init__(self, module: WModule, max_degree: int = 4, budget: int = DEFAULT_BUDGET):
        self.module = module
        self.group = module.group
        self.max_degree = max_degree
        n, r = self.group.order, module.rank
        self.dims = [n**i * r for i in range(max_degree + 1)]
        if self.dims[-1] > budget:
            raise BudgetExceeded(f"C^{max_degree} has {self.dims[-1]} coordinates (budget {budget})")
        self._delta: dict[int, sparse.csr_matrix] = {}
        self._rows: dict[int, list] = {}
        self._elim: dict[int, SparseSmith] = {}
        self._right = [np.array(module.right_action(v).tolist(), dtype=np.int64).reshape(r, r)
                       for v in range(n)]

    def dim(self, i: int) -> int:
        return self.dims[i]

    def coboundary(self, i: int) -> sparse.csr_matrix:
        """δ^i : C^i → C^{i+1} as an exact int64 sparse matrix."""
        if not 0 <= i < self.max_degree:
            raise ValueError(f"no coboundary in degree {i}")
        if i not in self._delta:
            self._delta[i] = self._build(i)
        return self._delta[i]

    def _build(self, n: int) -> sparse.csr_matrix:
        W = self.group.order
        r = self.module.rank
        m = W ** (n + 1)
        shape = (self.dims[n + 1], self.dims[n])
        if r == 0:
            return sparse.csr_matrix(shape, dtype=np.int64)
        mult = np.array(self.group.mult_table, dtype=np.int64)
        t = np.arange(m, dtype=np.int64)
        digits = [(t // W ** (n - k)) % W for k in range(n + 1)]
        rows, cols, vals = [], [], []
        ar = np.arange(r, dtype=np.int64)

        def ident_block(tuple_rows, tuple_cols, sign):
            rr = (tuple_rows[:, None] * r + ar[None, :]).ravel()
            cc = (tuple_cols[:, None] * r + ar[None, :]).ravel()
            rows.append(rr)
            cols.append(cc)
            vals.append(np.full(rr.shape, sign, dtype=np.int64))

        # f(g_1..g_n)^{g_{n+1}}
        last = digits[n]
        head = t // W
        R = np.stack(self._right)  # W × r × r
        blocks = R[last]  # m × r × r
        rr = (t[:, None, None] * r + ar[None, :, None]) + 0 * ar[None, None, :]
        cc = (head[:, None, None] * r + ar[None, None, :]) + 0 * ar[None, :, None]
        rows.append(rr.ravel())
        cols.append(cc.ravel())
        vals.append(blocks.ravel())
        # merged products
        for i in range(1, n + 1):
            merged = mult[digits[i - 1], digits[i]]
            new = [digits[k] for k in range(i - 1)] + [merged] + [digits[k] for k in range(i + 1, n + 1)]
            idx = np.zeros(m, dtype=np.int64)
            for d in new:
                idx = idx * W + d
            ident_block(t, idx, (-1) ** (n + 1 - i))
        # (-1)^{n+1} f(g_2..g_{n+1})
        ident_block(t, t % (W**n), (-1) ** (n + 1))
        mat = sparse.coo_matrix(
            (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))), shape=shape
        ).tocsr()
        mat.sum_duplicates()
        mat.eliminate_zeros()
        return mat

    def coboundary_rows(self, i: int) -> list[dict[int, int]]:
        if i not in self._rows:
            d = self.coboundary(i)
            ip, ix, dv = d.indptr, d.indices.tolist(), d.data.tolist()
            self._rows[i] = [dict(zip(ix[ip[k]:ip[k + 1]], dv[ip[k]:ip[k + 1]])) for k in range(d.shape[0])]
        return self._rows[i]

    def apply(self, i: int, vec: Sequence[int]) -> list[int]:
        """δ^i applied to an exact integer vector."""
        rows = self.coboundary_rows(i)
        return [sum(v * vec[j] for j, v in row.items()) for row in rows]

    def elimination(self, i: int) -> SparseSmith:
        if i not in self._elim:
            self._elim[i] = SparseSmith(self.coboundary_rows(i), self.dims[i])
        return self._elim[i]

    def check_dd(self) -> bool:
        for i in range(self.max_degree - 1):
            if (self.coboundary(i + 1) @ self.coboundary(i)).count_nonzero():
                return False
        return True


@dataclass
class CohomologyGroup:
    degree: int
    group: FinAb
    representatives: list[tuple[int, ...]]
    complex: CochainComplex = field(repr=False)
    _kernel_basis: IntMatrix | None = field(default=None, repr=False)

    @property
    def order(self):
        return self.group.order()

    def project(self, cocycle: Sequence[int]) -> tuple[int, ...]:
        """Coordinates of a cocycle's class (torsion coordinates mod the invariant factors)."""
        if self.degree == 0:
            c = solve(self._kernel_basis, cocycle) if self._kernel_basis.cols else ()
            if c is None:
                raise ValueError("not a 0-cocycle")
            return tuple(c)
        return self.complex.elimination(self.degree - 1).cokernel_coordinates(cocycle)

    def element(self, coords: Sequence[int]) -> list[int]:
        """A cocycle representing the class with the given coordinates."""
        n = self.complex.dims[self.degree]
        out = [0] * n
        for c, rep in zip(coords, self.representatives):
            if c:
                for j, x in enumerate(rep):
                    if x:
                        out[j] += c * x
        return out

    def elements(self):
        """All coordinate tuples of a finite group, in lexicographic order."""
        import itertools

        if self.group.free_rank:
            raise ValueError("infinite group")
        return itertools.product(*(range(d) for d in self.group.torsion))


def cohomology(c: CochainComplex, i: int) -> CohomologyGroup:
    if not 0 <= i < c.max_degree:
        raise ValueError(f"degree {i} outside 0..{c.max_degree - 1}")
    if c.module.rank == 0:
        return CohomologyGroup(i, FinAb(), [], c, IntMatrix.zeros(0, 0))
    if i == 0:
        d0 = c.coboundary(0).toarray().tolist()
        k = kernel(IntMatrix(d0, c.dims[0]))
        reps = k.columns()
        return CohomologyGroup(0, FinAb(len(reps)), reps, c, k)
    e = c.elimination(i - 1)
    reps = [tuple(e.torsion_generator(k)) for k in range(len(e.invariant_factors))]
    return CohomologyGroup(i, FinAb(0, e.invariant_factors), reps, c)


# complexes are cached per module action so that lattices with equal
# action matrices share one elimination
_CACHE: dict = {}
_CACHE_LIMIT = 256


def complex_for(module: WModule, max_degree: int = 4) -> CochainComplex:
    key = (module.key(), max_degree)
    hit = _CACHE.get(key)
    if hit is not None and hit.module.group is module.group:
        return hit
    if len(_CACHE) >= _CACHE_LIMIT:
        _CACHE.pop(next(iter(_CACHE)))
    cc = CochainComplex(module, max_degree)
    _CACHE[key] = cc
    return cc


def bar_complex(module: WModule, max_degree: int = 4, budget: int = DEFAULT_BUDGET) -> CochainComplex:
    return CochainComplex(module, max_degree, budget)


def group_cohomology(module: WModule, i: int) -> CohomologyGroup:
    return cohomology(complex_for(module, max(4, i + 1)), i)


@dataclass
class InducedMap:
    source: CohomologyGroup
    target: CohomologyGroup
    matrix: tuple[tuple[int, ...], ...]  # target coords × source generators

    def __call__(self, coords: Sequence[int]) -> tuple[int, ...]:
        tors = self.target.group.torsion
        out = []
        for k, row in enumerate(self.matrix):
            v = sum(a * c for a, c in zip(row, coords))
            out.append(v % tors[k] if k < len(tors) else v)
        return tuple(out)

    def image_order(self) -> int:
        """Order of the image subgroup (finite target)."""
        return self.target.group.order() // self.cokernel().order()

    def cokernel(self) -> FinAb:
        tors = list(self.target.group.torsion)
        k = len(tors)
        gens = [list(col) for col in zip(*self.matrix)] if self.matrix else []
        cols = gens + [[tors[j] if i == j else 0 for i in range(k)] for j in range(k)]
        if not cols or k == 0:
            return FinAb()
        from .intlin import invariant_factors

        return FinAb(0, invariant_factors(IntMatrix.from_columns(cols, k)))

    def is_zero(self) -> bool:
        tors = self.target.group.torsion
        return all(x % tors[k] == 0 for k, row in enumerate(self.matrix) for x in row)


def apply_module_map(f: IntMatrix, vec: Sequence[int], src_rank: int, n_tuples: int) -> list[int]:
    out = []
    rows = f.tolist()
    for t in range(n_tuples):
        block = vec[t * src_rank:(t + 1) * src_rank]
        out.extend(sum(a * b for a, b in zip(row, block)) for row in rows)
    return out


def induced_map(f: IntMatrix, source: WModule, target: WModule, i: int) -> InducedMap:
    """The map H^i(W; source) → H^i(W; target) induced by the module map f."""
    if source.group is not target.group:
        raise ValueError("modules over different groups")
    if f.shape != (target.rank, source.rank):
        raise ValueError("module map has the wrong shape")
    if not source.is_equivariant(f, target):
        raise NotEquivariant("map does not commute with the W-actions")
    hs = group_cohomology(source, i)
    ht = group_cohomology(target, i)
    n_tuples = source.group.order**i
    cols = []
    for rep in hs.representatives:
        img = apply_module_map(f, rep, source.rank, n_tuples) if target.rank else []
        cols.append(ht.project(img) if target.rank else ())
    k = len(ht.representatives)
    matrix = tuple(tuple(col[j] for col in cols) for j in range(k))
    # well-definedness: d·(image of a generator of order d) vanishes
    tors_s = hs.group.torsion
    tors_t = ht.group.torsion
    for j, col in enumerate(cols):
        if j < len(tors_s):
            for kk, x in enumerate(col):
                if (tors_s[j] * x) % tors_t[kk]:
                    raise AssertionError("induced map is not well defined")
    return InducedMap(hs, ht, matrix)
