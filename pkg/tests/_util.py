"""Small shared helpers for the test modules."""

import itertools
from math import gcd

from toralsub.catalogue import group_for
from toralsub.classification import ToralGroupSpec, classify
from toralsub.lattices import Lattice


def L(*cols):
    return Lattice(list(cols), 2)


def spec(key, epsilon="split"):
    return ToralGroupSpec(group_for(key), epsilon, key)


def nonsplit(key):
    s = spec(key)
    return [e for e in s.all_epsilons() if any(e)]


def records(key, lattice):
    """{ε: record} over every ε of H^3(W;Λ_0), split included."""
    s = spec(key)
    return {e: classify(s.with_epsilon(e), lattice) for e in s.all_epsilons()}


def triple(rec):
    return rec.lift_exists, rec.n_conjugacy, rec.n_extension_iso


def minors_gcd(rows, k):
    """gcd of all k×k minors (the k-th determinantal divisor)."""
    m, n = len(rows), len(rows[0]) if rows else 0
    g = 0
    for ri in itertools.combinations(range(m), k):
        for ci in itertools.combinations(range(n), k):
            g = gcd(g, _det([[rows[i][j] for j in ci] for i in ri]))
    return g


def _det(a):
    n = len(a)
    if n == 0:
        return 1
    if n == 1:
        return a[0][0]
    return sum((-1) ** j * a[0][j] * _det([row[:j] + row[j + 1:] for row in a[1:]]) for j in range(n) if a[0][j])
