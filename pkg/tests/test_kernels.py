"""The compiled and pure-Python kernels must agree exactly."""

import random

import pytest
from hypothesis import given, strategies as st

from toralsub import _kernels_py, kernels, oracle
from toralsub.intlin import IntMatrix, SparseSmith, snf
from _util import spec

needs_cython = pytest.mark.skipif("cython" not in kernels.BACKENDS, reason="compiled extension not built")


@pytest.fixture
def restore_backend():
    before = kernels.BACKEND
    yield
    kernels.use_backend(before)


def _random_sparse(rng, nrows, ncols, density, big=False):
    rows = []
    for _ in range(nrows):
        row = {}
        for j in range(ncols):
            if rng.random() < density:
                row[j] = rng.choice([1, -1, 1, -1, 2, -3, 5]) * (10**30 if big and rng.random() < 0.1 else 1)
        rows.append(row)
    return rows


def _dense(rows, ncols):
    return IntMatrix([[r.get(j, 0) for j in range(ncols)] for r in rows], ncols)


@needs_cython
@pytest.mark.parametrize("seed", range(40))
def test_elimination_agrees(seed):
    rng = random.Random(seed)
    nrows, ncols = rng.randint(1, 30), rng.randint(1, 30)
    rows = _random_sparse(rng, nrows, ncols, rng.choice([0.1, 0.2, 0.4]), big=seed % 5 == 0)
    py = _kernels_py.unit_pivot_eliminate([dict(r) for r in rows], ncols)
    cy = kernels.BACKENDS["cython"].unit_pivot_eliminate([dict(r) for r in rows], ncols)
    assert py[0] == cy[0] and py[1] == cy[1] and py[2] == cy[2]
    assert {i: dict(r) for i, r in py[3].items()} == {i: dict(r) for i, r in cy[3].items()}


@pytest.mark.parametrize("backend", sorted(kernels.BACKENDS))
@pytest.mark.parametrize("seed", range(25))
def test_sparse_smith_matches_dense_snf(backend, seed):
    rng = random.Random(1000 + seed)
    nrows, ncols = rng.randint(1, 14), rng.randint(1, 14)
    rows = _random_sparse(rng, nrows, ncols, 0.3)
    ss = SparseSmith(rows, ncols, kernel=kernels.BACKENDS[backend])
    dense = _dense(rows, ncols)
    assert ss.invariant_factors == snf(dense).invariant_factors
    assert ss.rank == snf(dense).rank


@given(st.lists(st.dictionaries(st.integers(0, 7), st.integers(-3, 3), max_size=5), min_size=1, max_size=8))
def test_pivots_are_units_in_distinct_rows_and_columns(rows):
    for backend in kernels.BACKENDS.values():
        pivots, _, _, residual = backend.unit_pivot_eliminate([dict(r) for r in rows], 8)
        assert all(u in (1, -1) for _, _, u in pivots)
        assert len({p for p, _, _ in pivots}) == len(pivots) == len({q for _, q, _ in pivots})
        pcols = {q for _, q, _ in pivots}
        assert all(not (set(r) & pcols) for r in residual.values())


def _oracle_rows(key, n, eps):
    rep = oracle.run(spec(key, eps), n)
    return [(r.lattice, r.observed, r.weyl_observed) for r in rep.rows]


@needs_cython
@pytest.mark.parametrize("key, n", [("C2/Z+Zt", 4), ("C2/Zt+Zt", 4), ("C4/Cub", 2), ("C3/Z[w]", 3), ("D8/B2", 2)])
def test_section_search_agrees(key, n, restore_backend):
    for eps in spec(key).all_epsilons():
        kernels.use_backend("python")
        py = _oracle_rows(key, n, eps)
        kernels.use_backend("cython")
        cy = _oracle_rows(key, n, eps)
        assert py == cy


def test_unknown_backend(restore_backend):
    with pytest.raises(ValueError):
        kernels.use_backend("fortran")
    kernels.use_backend("python")
    assert kernels.BACKEND == "python"
