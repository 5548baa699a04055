import itertools
import random

import pytest
from hypothesis import given, strategies as st

from toralsub.intlin import IntMatrix
from toralsub.lattices import (
    AmbientMismatch, Lattice, NotContained, ZeroLattice, dual_presentation, index, intersect, is_cofree,
    lattice_sum, mu, saturation,
)
from _util import L


def _random_rank2(rng):
    while True:
        a, b, c, d = (rng.randint(-12, 12) for _ in range(4))
        if a * d - b * c:
            return Lattice([(a, b), (c, d)], 2)


def _mu_brute(l: Lattice) -> int:
    # the box [-R, R]^2 with R the max-norm of a basis vector contains a shortest vector
    R = min(max(abs(x) for x in c) for c in l.columns())
    best = R
    for v in itertools.product(range(-R, R + 1), repeat=2):
        if any(v) and v in l:
            best = min(best, max(abs(x) for x in v))
    return best


def test_mu_matches_box_brute_force():
    rng = random.Random(11)
    for _ in range(1000):
        l = _random_rank2(rng)
        assert mu(l) == _mu_brute(l), l


def test_mu_rank_one_and_zero():
    assert mu(Lattice([(3, -6)], 2)) == 6
    with pytest.raises(ZeroLattice):
        mu(Lattice.zero(2))


def test_mu_rank3():
    l = Lattice([(5, 1, 0), (0, 5, 1), (1, 0, 5)], 3)
    pts = [v for v in itertools.product(range(-5, 6), repeat=3) if any(v) and v in l]
    assert mu(l) == min(max(abs(x) for x in v) for v in pts)


@given(st.integers(1, 8), st.integers(1, 8), st.integers(0, 7))
def test_mu_is_monotone_under_inclusion(a, c, b):
    b %= c
    big = Lattice([(a, b), (0, c)], 2)
    small = big.scale(2)
    assert mu(small) >= mu(big)
    assert mu(small) == 2 * mu(big)


def test_canonical_basis_and_membership():
    a = Lattice([(2, 4), (6, 8)], 2)
    b = Lattice([(2, 4), (8, 12), (4, 4)], 2)
    assert a == b and hash(a) == hash(b)
    assert (10, 16) in a and (1, 0) not in a
    assert a.coordinates((2, 4)) is not None


def test_sum_intersection_index():
    x = L((2, 0), (0, 1))
    y = L((1, 0), (0, 2))
    assert lattice_sum(x, y) == Lattice.ambient(2)
    assert intersect(x, y) == L((2, 0), (0, 2))
    assert index(L((2, 0), (0, 3)), Lattice.ambient(2)) == 6
    with pytest.raises(NotContained):
        index(Lattice.ambient(2), x)
    with pytest.raises(AmbientMismatch):
        lattice_sum(x, Lattice.ambient(3))


@given(st.lists(st.tuples(st.integers(-9, 9), st.integers(-9, 9)), min_size=1, max_size=3))
def test_intersection_is_largest_common_sublattice(gens):
    x = Lattice(gens, 2)
    y = L((3, 0), (1, 2))
    z = intersect(x, y)
    assert x.contains(z) and y.contains(z)
    for v in itertools.product(range(-6, 7), repeat=2):
        if v in x and v in y:
            assert v in z


def test_cofree_and_saturation():
    assert is_cofree(Lattice([(1, 1)], 2), Lattice.ambient(2))
    assert not is_cofree(Lattice([(2, 2)], 2), Lattice.ambient(2))
    assert saturation(Lattice([(2, 4)], 2)) == Lattice([(1, 2)], 2)
    assert saturation(L((2, 0), (0, 2))) == Lattice.ambient(2)


def test_dual_presentation_transports_actions():
    sup = Lattice.ambient(2)
    sub = L((1, 1), (1, -1))
    dp = dual_presentation(sup, sub)
    swap = IntMatrix([[0, 1], [1, 0]])
    b = dp.transport(swap)
    assert swap @ dp.X == dp.X @ b
    assert dp.Xt == dp.X.T
    with pytest.raises(ValueError):
        dual_presentation(sup, L((1, 0), (0, 2))).transport(swap)
