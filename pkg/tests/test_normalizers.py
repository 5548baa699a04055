import itertools

import pytest
from hypothesis import given, strategies as st

from toralsub.catalogue import GROUPS, group_for
from toralsub.enumeration import enumerate_corank, enumerate_full_rank
from toralsub.intlin import FinAb, IntMatrix, invariant_factors
from toralsub.lattices import Lattice, NotContained
from toralsub.normalizers import component_map, finite_weyl_criterion, lambda_plus, weyl
from toralsub.wgroup import NotInvariant
from _util import L


def _all_lattices(key, bound=12):
    w = group_for(key)
    lats = enumerate_full_rank(w, None, bound) + enumerate_corank(w, None, 1, 4) + [Lattice.zero(2)]
    return w, lats


@pytest.mark.parametrize("key", sorted(GROUPS))
def test_generators_suffice_for_lambda_plus(key):
    w, lats = _all_lattices(key)
    for l in lats:
        assert lambda_plus(w, l) == lambda_plus(w, l, all_elements=True), l


@pytest.mark.parametrize("key", sorted(GROUPS))
def test_finite_weyl_criterion_agrees_with_torus_rank(key):
    w, lats = _all_lattices(key)
    for l in lats:
        assert finite_weyl_criterion(w, l) == (weyl(w, l).torus_rank == 0), l


@pytest.mark.parametrize("key", ["C2/Zt+Zt", "C4/Cub", "C3/Z[w]"])
def test_cyclic_component_order_is_det_m(key):
    # cyclic W with nonsingular M(g); the reflections have det M(g) = 0
    w, lats = _all_lattices(key)
    g = w.generators[0]
    m = g - IntMatrix.identity(2)
    assert m.det() != 0
    for l in lats:
        if l.is_full_rank():
            wg = weyl(w, l)
            assert wg.torus_rank == 0 and wg.component_group.order() == abs(m.det())


def test_weyl_of_zero_lattice_is_trivial():
    for key in GROUPS:
        wg = weyl(group_for(key), Lattice.zero(2))
        assert wg.torus_rank == 0 and wg.component_group.is_trivial()


def test_weyl_requires_invariance():
    with pytest.raises(NotInvariant):
        weyl(group_for("C2/ZW"), L((1, 0), (0, 2)))


def test_swap_rank_one_criterion():
    w = group_for("C2/ZW")
    assert finite_weyl_criterion(w, Lattice([(3, -3)], 2))
    assert not finite_weyl_criterion(w, Lattice([(3, 3)], 2))
    assert finite_weyl_criterion(w, Lattice.zero(2))


def test_minus_identity_finite_subgroups_have_klein_weyl_groups():
    w = group_for("C2/Zt+Zt")
    for l in enumerate_full_rank(w, None, 10):
        assert finite_weyl_criterion(w, l)
        assert weyl(w, l).component_group == FinAb(0, (2, 2))


def _torsion_vectors(l: Lattice, plus: Lattice, box=6, exponent=12):
    for c in itertools.product(range(-box, box + 1), repeat=l.rank):
        v = tuple(sum(ci * b[t] for ci, b in zip(c, l.columns())) for t in range(l.ambient_rank))
        if tuple(exponent * x for x in v) in plus:
            yield v


def _brute_image_order(w, lam_f: Lattice, lam_s: Lattice) -> int:
    plus_s = lambda_plus(w, lam_s)
    plus_f = lambda_plus(w, lam_f)
    reps = []
    for v in _torsion_vectors(lam_s, plus_s):
        if not any(tuple(a - b for a, b in zip(v, u)) in plus_f for u in reps):
            reps.append(v)
    return len(reps)


def _image_order(cm) -> int:
    tors = cm.target.torsion
    if not tors:
        return 1
    cols = [list(col) for col in zip(*cm.matrix)] if cm.matrix and cm.matrix[0] else []
    cols += [[d if i == j else 0 for i in range(len(tors))] for j, d in enumerate(tors)]
    coker = 1
    for d in invariant_factors(IntMatrix.from_columns(cols, len(tors))):
        coker *= d
    # zero invariant factors cannot occur: the target is finite
    return FinAb(0, tors).order() // coker


COMPONENT_CASES = [
    ("C2/Zt+Zt", [(1, 0), (0, 1)], [(2, 0), (0, 2)]),
    ("C2/Zt+Zt", [(1, 0), (0, 1)], [(1, 1), (0, 2)]),
    ("C2/Z+Zt", [(1, 0), (0, 1)], [(1, 0), (0, 2)]),
    ("C2/Z+Zt", [(3, 0), (0, 1)], [(3, 0), (0, 2)]),
    ("C2/Z+Zt", [(1, 0), (0, 1)], [(1, 1), (1, -1)]),
    ("C2/ZW", [(1, 1), (1, -1)], [(2, 2), (1, -1)]),
    ("C2xC2/A1xA1", [(1, 0), (0, 1)], [(1, 1), (1, -1)]),
    ("C3/Z[w]", [(1, 0), (0, 1)], [(2, 1), (-1, 1)]),
    ("C4/Cub", [(1, 0), (0, 1)], [(2, 1), (-1, 2)]),
]


@pytest.mark.parametrize("key, big, small", COMPONENT_CASES)
def test_component_map_matches_brute_force(key, big, small):
    w = group_for(key)
    cm = component_map(w, L(*big), L(*small))
    assert _image_order(cm) == _brute_image_order(w, L(*big), L(*small))


def test_component_map_examples_are_zero():
    # inclusion 2Λ ⊆ Λ under -I: 2Λ/4Λ lands in 2Λ = Λ_+, so the map vanishes
    w = group_for("C2/Zt+Zt")
    cm = component_map(w, L((1, 0), (0, 1)), L((2, 0), (0, 2)))
    assert cm.source.torsion == (2, 2) and cm.target.torsion == (2, 2)
    assert cm.is_zero()
    # Λ_1(m, 2n) ⊆ Λ_1(m, n) for diag(1,-1): (0, 2n) already lies in Λ^F_+
    w = group_for("C2/Z+Zt")
    for m, n in [(1, 1), (2, 3), (3, 2)]:
        cm = component_map(w, L((m, 0), (0, n)), L((m, 0), (0, 2 * n)))
        assert cm.source.torsion == (2,) and cm.target.torsion == (2,)
        assert cm.is_zero()


def test_component_map_identity():
    w = group_for("C2xC2/A1xA1")
    l = L((1, 0), (0, 1))
    cm = component_map(w, l, l)
    assert [list(r) for r in cm.matrix] == [[1, 0], [0, 1]]


def test_component_map_is_functorial():
    chains = [
        ("C2/Z+Zt", L((1, 0), (0, 1)), L((1, 1), (1, -1)), L((2, 0), (0, 2))),
        ("C2/Z+Zt", L((1, 0), (0, 1)), L((1, 0), (0, 2)), L((1, 0), (0, 4))),
        ("C2/Z+Zt", L((1, 0), (0, 1)), L((3, 0), (0, 1)), L((3, 0), (0, 3))),
        # both factors nonzero, composite zero
        ("C2/Zt+Zt", L((1, 0), (0, 1)), L((1, 1), (0, 2)), L((2, 0), (0, 2))),
        ("C2xC2/A1xA1", L((1, 0), (0, 1)), L((1, 1), (1, -1)), L((2, 2), (2, -2))),
    ]
    nonzero = 0
    for key, top, mid, low in chains:
        w = group_for(key)
        direct = component_map(w, top, low)
        first = component_map(w, mid, low)
        second = component_map(w, top, mid)
        composite = tuple(
            tuple(sum(second.matrix[i][k] * first.matrix[k][j] for k in range(len(first.matrix))) % direct.target.torsion[i]
                  for j in range(len(direct.source.torsion)))
            for i in range(len(direct.target.torsion))
        )
        reduced = tuple(tuple(x % direct.target.torsion[i] for x in row) for i, row in enumerate(direct.matrix))
        assert composite == reduced
        nonzero += (not first.is_zero()) and (not second.is_zero())
    assert nonzero >= 1


def test_component_map_requires_containment():
    with pytest.raises(NotContained):
        component_map(group_for("C2/Z+Zt"), L((2, 0), (0, 2)), L((1, 0), (0, 1)))


@given(st.integers(1, 6), st.integers(1, 6))
def test_reflection_type1_weyl_group(m, n):
    wg = weyl(group_for("C2/Z+Zt"), L((m, 0), (0, n)))
    assert wg.torus_rank == 1 and wg.component_group == FinAb(0, (2,))


def _wdesc(key, l):
    wg = weyl(group_for(key), l)
    return wg.torus_rank, wg.component_group


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_weyl_groups_of_the_rank_one_families(m):
    assert _wdesc("C2/Z+Zt", Lattice([(0, m)], 2)) == (0, FinAb(0, (2,)))
    assert _wdesc("C2/Z+Zt", Lattice([(m, 0)], 2)) == (1, FinAb())
    assert _wdesc("C2/ZW", Lattice([(m, -m)], 2)) == (0, FinAb(0, (2,)))
    assert _wdesc("C2/ZW", Lattice([(m, m)], 2)) == (1, FinAb())
    for key in ("C2xC2/A1xA1", "C2xC2/Cub_delta"):
        v = (m, 0) if key == "C2xC2/A1xA1" else (m, m)
        assert _wdesc(key, Lattice([v], 2)) == (0, FinAb(0, (2,)))


@pytest.mark.parametrize("m, n", [(1, 1), (1, 2), (2, 1), (2, 2), (3, 5)])
def test_weyl_groups_of_the_rank_two_families(m, n):
    klein = (0, FinAb(0, (2, 2)))
    assert _wdesc("C2/ZW", L((m, m), (n, -n))) == (1, FinAb(0, (2,)))
    assert _wdesc("C2xC2/A1xA1", L((m, 0), (0, n))) == klein
    assert _wdesc("C2xC2/Cub_delta", L((m, m), (n, -n))) == klein
    assert _wdesc("C2/Zt+Zt", L((m, 0), (0, n))) == klein


@pytest.mark.parametrize("m, n", [(1, 1), (2, 1), (3, 1), (2, 2), (4, 2)])
def test_weyl_of_type2_for_the_klein_groups_has_order_two(m, n):
    # Λ^S = ⟨(m,n),(m,-n)⟩ contains Λ_+ = ⟨(2m,0),(0,2n)⟩ with index 2; the
    # finite model observes the same order
    assert _wdesc("C2xC2/A1xA1", L((m, n), (m, -n))) == (0, FinAb(0, (2,)))
    if (m + n) % 2 == 0:
        lat = L(((m + n) // 2, (m - n) // 2), ((m - n) // 2, (m + n) // 2))
        assert _wdesc("C2xC2/Cub_delta", lat) == (0, FinAb(0, (2,)))


@pytest.mark.xfail(strict=True, reason="Λ_+ has index 2 in ⟨(1,1),(1,-1)⟩, so the component group is Z/2")
def test_weyl_of_a1a1_type2_is_klein():
    assert _wdesc("C2xC2/A1xA1", L((1, 1), (1, -1))) == (0, FinAb(0, (2, 2)))


@pytest.mark.xfail(strict=True, reason="Λ_+ has index 2 in Λ^0 for the diagonal action, so the component group is Z/2")
def test_weyl_of_cub_delta_type2_is_klein():
    assert _wdesc("C2xC2/Cub_delta", L((1, 0), (0, 1))) == (0, FinAb(0, (2, 2)))


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_weyl_groups_of_the_rotation_groups(n):
    sq = L((n, 0), (0, n))
    tilt = L((n, n), (n, -n))
    assert _wdesc("C4/Cub", sq) == (0, FinAb(0, (2,)))
    assert _wdesc("C4/Cub", tilt) == (0, FinAb(0, (2,)))
    assert _wdesc("D8/B2", sq) == (0, FinAb(0, (2,)))
    assert _wdesc("D8/B2", tilt) == (0, FinAb(0, (2,)))
    assert _wdesc("C3/Z[w]", sq) == (0, FinAb(0, (3,)))
    root3 = L((2 * n, n), (-n, n))
    assert _wdesc("D12/G2", sq) == (0, FinAb())
    assert _wdesc("D12/G2", root3) == (0, FinAb())


@pytest.mark.parametrize("n", [1, 2, 3])
def test_weyl_groups_of_the_dihedral_six_families(n):
    sq = L((n, 0), (0, n))
    root3 = L((2 * n, n), (-n, n))
    # the two families swap roles between the two modules
    a2 = (_wdesc("D6/A2", sq), _wdesc("D6/A2", root3))
    dp = (_wdesc("D6/Z[w]''", sq), _wdesc("D6/Z[w]''", root3))
    assert sorted(x[1].order() for x in a2) == [1, 3]
    assert sorted(x[1].order() for x in dp) == [1, 3]
    assert a2[0][1].order() == dp[1][1].order()
