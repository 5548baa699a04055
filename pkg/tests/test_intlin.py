import random
from math import gcd, prod

import pytest
from hypothesis import given, strategies as st

from toralsub.intlin import (
    FinAb, IntMatrix, QuotientMap, SparseSmith, hnf, invariant_factors, kernel, quotient, snf, solve,
)
from _util import minors_gcd

N_RANDOM = 1000


def _random_matrices(seed, count=N_RANDOM):
    rng = random.Random(seed)
    for _ in range(count):
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        bound = rng.choice([1, 3, 9, 40])
        # mix in rank-deficient matrices: a duplicated or zero row now and then
        rows = [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(m)]
        if m > 1 and rng.random() < 0.2:
            rows[-1] = [2 * x for x in rows[0]]
        yield IntMatrix(rows, n)


def _in_span(basis: IntMatrix, vec) -> bool:
    if basis.cols == 0:
        return not any(vec)
    return solve(basis, vec) is not None


def _hnf_shape_ok(h: IntMatrix) -> bool:
    prev = -1
    for j in range(h.cols):
        col = h.column(j)
        piv = next((i for i, x in enumerate(col) if x), None)
        if piv is None or piv <= prev or col[piv] <= 0:
            return False
        for k in range(j):
            if not 0 <= h[piv, k] < col[piv]:
                return False
        prev = piv
    return True


def test_hnf_contract_on_random_matrices():
    for a in _random_matrices(1):
        h = hnf(a)
        assert _hnf_shape_ok(h), (a, h)
        assert all(_in_span(a, c) for c in h.columns())
        assert all(_in_span(h, c) for c in a.columns())
        assert hnf(h) == h


def test_hnf_is_canonical_under_column_operations():
    rng = random.Random(7)
    for a in _random_matrices(2, 300):
        n = a.cols
        u = IntMatrix.identity(n)
        for _ in range(4):
            i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
            e = [[int(r == c) for c in range(n)] for r in range(n)]
            if i != j:
                e[i][j] = rng.randint(-3, 3)
            else:
                e[i][i] = -1
            u = u @ IntMatrix(e, n)
        assert hnf(a @ u) == hnf(a)


def test_snf_contract_on_random_matrices():
    for a in _random_matrices(3):
        s = snf(a)
        assert s.U @ a @ s.V == s.D
        assert abs(s.U.det()) == 1 and abs(s.V.det()) == 1
        assert s.U @ s.Uinv == IntMatrix.identity(a.rows)
        assert s.V @ s.Vinv == IntMatrix.identity(a.cols)
        d = s.diagonal
        for i in range(s.D.rows):
            for j in range(s.D.cols):
                if i != j:
                    assert s.D[i, j] == 0
        nz = [x for x in d if x]
        assert all(x > 0 for x in nz)
        assert d[: len(nz)] == tuple(nz), "zeros must trail"
        assert all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))


def test_snf_matches_determinantal_divisors():
    # d_1 ... d_k = gcd of k×k minors, an oracle independent of the elimination
    for a in _random_matrices(4, N_RANDOM):
        d = snf(a).diagonal
        rows = a.tolist()
        prev = 1
        for k in range(1, min(a.shape) + 1):
            g = minors_gcd(rows, k)
            if g == 0:
                assert all(x == 0 for x in d[k - 1:])
                break
            assert d[k - 1] * prev == g
            prev = g


def test_invariant_factors_agree_with_snf():
    for a in _random_matrices(5, 200):
        assert invariant_factors(a) == snf(a).invariant_factors


def test_kernel_is_saturated_and_complete():
    for a in _random_matrices(6, 300):
        k = kernel(a)
        rank = snf(a).rank
        assert k.cols == a.cols - rank
        assert (a @ k).is_zero() if k.cols else True
        # every small integer solution lies in the span of the kernel basis
        rng = random.Random(hash(a) & 0xFFFF)
        for _ in range(20):
            x = [rng.randint(-2, 2) for _ in range(a.cols)]
            if not any(a @ x):
                assert _in_span(k, x)


def test_solve_finds_solutions_and_detects_obstructions():
    rng = random.Random(8)
    for a in _random_matrices(9, 300):
        x0 = [rng.randint(-5, 5) for _ in range(a.cols)]
        b = a @ x0
        x = solve(a, b)
        assert x is not None and tuple(a @ x) == tuple(b)
    assert solve(IntMatrix([[2, 0], [0, 3]]), [1, 0]) is None
    assert solve(IntMatrix([[2, 4]]), [6]) is not None


def test_exact_big_integers():
    big = 2**130 + 7
    a = IntMatrix([[big, 0], [0, 1]])
    assert snf(a).diagonal == (1, big)
    assert all(isinstance(x, int) for x in hnf(a).entries)


def test_finab_normalisation():
    g = FinAb.from_diagonal([2, 3, 4, 0, 1])
    assert g.free_rank == 1 and g.torsion == (2, 12)
    assert FinAb.from_diagonal([2, 2, 2, 2]).short() == "2^4"
    assert FinAb().short() == "0" and FinAb().order() == 1
    with pytest.raises(ValueError):
        FinAb(0, (4, 2))
    with pytest.raises(ValueError):
        FinAb(0, (1,))


@given(st.lists(st.integers(0, 30), min_size=1, max_size=5))
def test_finab_order_is_product(entries):
    g = FinAb.from_diagonal(entries)
    if 0 in entries:
        assert not g.is_finite
    else:
        assert g.order() == prod(max(e, 1) for e in entries)
    t = g.torsion
    assert all(t[i + 1] % t[i] == 0 for i in range(len(t) - 1))


def test_quotient_structure():
    assert quotient(IntMatrix([[2, 0], [0, 3]]), IntMatrix.identity(2)).torsion == (6,)
    q = QuotientMap(IntMatrix([[2, 0], [0, 0]]), IntMatrix.identity(2))
    assert q.group.free_rank == 1 and q.group.torsion == (2,)


@given(st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=1, max_size=4))
def test_sparse_smith_matches_dense(rows):
    a = IntMatrix(rows, 3)
    ss = SparseSmith([{j: v for j, v in enumerate(r) if v} for r in rows], 3)
    assert ss.invariant_factors == snf(a).invariant_factors
    assert ss.rank == snf(a).rank
    # solving through the logged elimination agrees with the dense solver
    b = a @ [1, -2, 3]
    x = ss.solve(b)
    assert x is not None and tuple(a @ x) == tuple(b)


def test_gcd_of_minors_sanity():
    assert minors_gcd([[2, 4], [6, 8]], 1) == 2
    assert minors_gcd([[2, 4], [6, 8]], 2) == 8
    assert gcd(0, 0) == 0
