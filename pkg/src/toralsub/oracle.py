"""Brute-force check of subgroup counts in finite models of G.

A model keeps the elements (x, w) of G whose torus part is M-torsion,
written x ∈ (Z/M)^r in T-coordinates t = x/M, with the product

    (a, v)(b, w) = (c(v, w) + A(w)^T a + b, vw).

The modulus is M = N·e·|W|, with e the order of ε.  The factor e makes the
cocycle c = Y/e representable, and the factor |W| is enough to meet every
T-conjugacy class of full subgroups over S ⊆ T[N].  An averaging argument
shows that a section can be moved into M-torsion by a torus conjugation.

Subgroups S ⊆ T[N] and their dual lattices are found by brute force over
(Z/N)^r without the lattice enumeration code.  For each S the generator
lifts σ(w_i) range over T[M]/S.  A lift tuple is kept when the Schreier
conditions hold along a Cayley spanning tree.  Two kept tuples are
T-conjugate iff they differ by (δt(w_i))_i for a torus point t, and only
t ∈ T[M·|W|] are needed.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import Counter
from dataclasses import dataclass, field

from . import kernels
from .classification import ToralGroupSpec, classify
from .lattices import Lattice

DEFAULT_CAP = 2**10
SEARCH_CAP = 5 * 10**7


class ModelTooLarge(RuntimeError):
    pass


class FiniteModel:
    def __init__(self, spec: ToralGroupSpec, n: int, cap: int = DEFAULT_CAP):
        w = spec.group
        r = spec.rank
        if n < 1:
            raise ValueError("modulus must be positive")
        if n**r * w.order > cap:
            raise ModelTooLarge(f"|T[{n}] x W| = {n**r * w.order} exceeds the cap {cap}")
        self.spec = spec
        self.n = n
        self.r = r
        self.group = w
        e, y = spec.torus_cocycle()
        self.e = e
        self.modulus = m = n * e * w.order
        nw = w.order
        self.right = [[[x % m for x in row] for row in w.elements[v].T.tolist()] for v in range(nw)]
        step = m // e
        self.cocycle = [[tuple(x * step % m for x in y[v][u]) for u in range(nw)] for v in range(nw)]

    @property
    def order(self) -> int:
        return self.modulus**self.r * self.group.order

    def act(self, x, w):
        m = self.modulus
        return tuple(sum(a * b for a, b in zip(row, x)) % m for row in self.right[w])

    def mul(self, g, h):
        (a, v), (b, w) = g, h
        m = self.modulus
        c = self.cocycle[v][w]
        aw = self.act(a, w)
        return tuple((c[i] + aw[i] + b[i]) % m for i in range(self.r)), self.group.mul(v, w)

    def power(self, g, k: int):
        out = ((0,) * self.r, self.group.identity)
        for _ in range(k):
            out = self.mul(out, g)
        return out

    def check_associativity(self, samples: int = 500, seed: int = 0) -> bool:
        """Exhaustive on the W-part (cocycle identity, action homomorphism), sampled on elements."""
        w = self.group
        nw = w.order
        m = self.modulus
        for u, v in itertools.product(range(nw), repeat=2):
            for x in itertools.product(range(m), repeat=self.r) if m**self.r <= 64 else [tuple(range(1, self.r + 1))]:
                if self.act(self.act(x, u), v) != self.act(x, w.mul(u, v)):
                    return False
        for u, v, t in itertools.product(range(nw), repeat=3):
            lhs = [a + b for a, b in zip(self.act(self.cocycle[u][v], t), self.cocycle[w.mul(u, v)][t])]
            rhs = [a + b for a, b in zip(self.cocycle[u][w.mul(v, t)], self.cocycle[v][t])]
            if any((a - b) % m for a, b in zip(lhs, rhs)):
                return False
        rng = random.Random(seed)

        def rand():
            return tuple(rng.randrange(m) for _ in range(self.r)), rng.randrange(nw)

        for _ in range(samples):
            a, b, c = rand(), rand(), rand()
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                return False
        return True


# --- subgroups of T[N] --------------------------------------------------------

def _span(gens, n, r):
    seen = {(0,) * r}
    frontier = list(seen)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple((a + b) % n for a, b in zip(x, g))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def torsion_subgroups(n: int, r: int) -> list[frozenset]:
    """Every subgroup of (Z/n)^r, built by adjoining one generator at a time."""
    points = list(itertools.product(range(n), repeat=r))
    found = {frozenset({(0,) * r})}
    frontier = list(found)
    while frontier:
        nxt = []
        for s in frontier:
            for p in points:
                if p not in s:
                    t = _span(_gens_of(s, n, r) + [p], n, r)
                    if t not in found:
                        found.add(t)
                        nxt.append(t)
        frontier = nxt
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def _gens_of(s, n, r):
    gens = []
    cur = frozenset({(0,) * r})
    for x in sorted(s):
        if x not in cur:
            gens.append(x)
            cur = _span(gens, n, r)
    return gens


def _invariant(s, mats, n) -> bool:
    return all(
        tuple(sum(a * b for a, b in zip(row, x)) % n for row in mat) in s for x in s for mat in mats
    )


def dual_lattice_of(s, n: int, r: int) -> Lattice:
    """Λ^S = {λ ∈ Z^r : λ·t ∈ Z for t ∈ S}, with S ⊆ (1/n)Z^r/Z^r given in units 1/n."""
    gens = [tuple(n if i == j else 0 for j in range(r)) for i in range(r)]
    for lam in itertools.product(range(n), repeat=r):
        if all(sum(a * b for a, b in zip(lam, x)) % n == 0 for x in s):
            gens.append(lam)
    return Lattice(gens, r)


# --- full subgroups -----------------------------------------------------------

@dataclass
class OracleCount:
    lattice: Lattice
    subgroup_order: int
    n_classes: int
    n_subgroups: int
    weyl_order: int  # |S^+ ∩ T[M]| / |S|


def _keyer(l: Lattice, m: int):
    lt = l.basis.T.tolist()

    def key(x):
        return tuple(sum(a * b for a, b in zip(row, x)) % m for row in lt)

    return key


def enumerate_full_subgroups(model: FiniteModel) -> list[OracleCount]:
    """Per invariant S ⊆ T[N]: number of T-conjugacy classes of full subgroups over S."""
    w = model.group
    r, n, m = model.r, model.n, model.modulus
    gens = w.generator_indices
    ident = w.identity
    points = list(itertools.product(range(m), repeat=r))
    tmats = [w.elements[g].T.tolist() for g in gens]
    out = []
    for s in torsion_subgroups(n, r):
        if not _invariant(s, tmats, n):
            continue
        lam = dual_lattice_of(s, n, r)
        key = _keyer(lam, m)
        zero = key((0,) * r)
        reps = {}
        for p in points:
            reps.setdefault(key(p), p)
        # lifts of each generator, filtered by (g, w)^ord ∈ S
        cands = []
        for gi in gens:
            k = w.element_order(gi)
            cl = []
            for rep in reps.values():
                x, v = model.power((rep, gi), k)
                if v == ident and key(x) == zero:
                    cl.append(list(rep))
            cands.append(cl)
        total = math.prod(len(c) for c in cands) if cands else 0
        if total > SEARCH_CAP:
            raise ModelTooLarge(f"{total} lift tuples to test over S of order {len(s)}")
        valid = _search(model, lam, cands)
        keys = {tuple(key(cands[i][j]) for i, j in enumerate(t)) for t in valid}
        shifts = _conjugation_shifts(model, key)
        classes = 0
        remaining = set(keys)
        while remaining:
            base = remaining.pop()
            classes += 1
            for d in shifts:
                remaining.discard(tuple(tuple((a + b) % m for a, b in zip(kb, kd)) for kb, kd in zip(base, d)))
        # Weyl group part visible in the model
        plus = 0
        for p in points:
            if all(key(tuple(a - b for a, b in zip(model.act(p, g), p))) == zero for g in gens):
                plus += 1
        s_order = sum(1 for p in points if key(p) == zero)
        if not gens:
            classes = 1
            keys = {()}
        out.append(OracleCount(lam, len(s), classes, len(keys), plus // s_order))
    out.sort(key=lambda c: (abs(c.lattice.basis.det()), c.lattice.sort_key()))
    return out


def _search(model: FiniteModel, lam: Lattice, cands):
    w = model.group
    r, m, nw = model.r, model.modulus, model.group.order
    if not cands:
        return []
    act = [model.right[v][a][b] for v in range(nw) for a in range(r) for b in range(r)]
    mult = [w.mul(u, v) for u in range(nw) for v in range(nw)]
    coc = [model.cocycle[u][v][a] for u in range(nw) for v in range(nw) for a in range(r)]
    order, parent, slot = w.cayley_tree()
    lt = lam.basis.T
    flat_lt = [x for row in lt.tolist() for x in row]
    return kernels.search_sections(
        m, r, nw, act, mult, coc, list(order),
        [p if p is not None else -1 for p in parent],
        [s if s is not None else -1 for s in slot],
        list(w.generator_indices), flat_lt, lt.rows, cands,
    )


def _conjugation_shifts(model: FiniteModel, key) -> set:
    """Keys of (δt(w_i))_i for t ∈ T[M|W|] with every δt(w_i) ∈ T[M]."""
    w = model.group
    r, m, nw = model.r, model.modulus, model.group.order
    big = m * nw
    mats = [w.elements[g].T.tolist() for g in w.generator_indices]
    out = set()
    for y in itertools.product(range(big), repeat=r):
        row = []
        for a in mats:
            z = [sum(p * q for p, q in zip(line, y)) - yi for line, yi in zip(a, y)]
            if any(v % nw for v in z):
                break
            row.append(key(tuple((v // nw) % m for v in z)))
        else:
            out.add(tuple(row))
    return out


# --- comparison ----------------------------------------------------------------

@dataclass
class ReportRow:
    lattice: Lattice
    predicted: int
    observed: int
    weyl_predicted: int | None
    weyl_observed: int

    @property
    def ok(self) -> bool:
        return self.predicted == self.observed and (
            self.weyl_predicted is None or self.weyl_predicted == self.weyl_observed
        )


@dataclass
class OracleReport:
    n: int
    epsilon: tuple
    rows: list[ReportRow] = field(default_factory=list)

    @property
    def mismatches(self) -> list[ReportRow]:
        return [row for row in self.rows if not row.ok]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def profile(self) -> tuple:
        return tuple((row.lattice.sort_key(), row.observed) for row in self.rows)

    def table(self) -> str:
        lines = [f"N={self.n} eps={self.epsilon}", f"{'S-lattice':<24} {'pred':>5} {'obs':>5} {'weyl':>9}  status"]
        for row in self.rows:
            wp = "-" if row.weyl_predicted is None else str(row.weyl_predicted)
            lines.append(
                f"{row.lattice.label():<24} {row.predicted:>5} {row.observed:>5} {wp + '/' + str(row.weyl_observed):>9}  "
                + ("ok" if row.ok else "MISMATCH")
            )
        return "\n".join(lines)


def compare(results: list[OracleCount], records: dict) -> list[ReportRow]:
    """Row per S: classification n_conjugacy against the observed class count.

    ``records`` maps a lattice to its ClassificationRecord.  Weyl orders are
    compared when the Weyl group is finite.
    """
    rows = []
    for res in results:
        rec = records[res.lattice]
        wp = rec.weyl.component_group.order() if rec.weyl.torus_rank == 0 and rec.lift_exists else None
        if res.n_classes == 0:
            wp = None
        rows.append(ReportRow(res.lattice, rec.n_conjugacy, res.n_classes, wp, res.weyl_order))
    return rows


def run(spec: ToralGroupSpec, n: int, cap: int = DEFAULT_CAP) -> OracleReport:
    model = FiniteModel(spec, n, cap)
    if not model.check_associativity():
        raise AssertionError("finite model is not associative")
    results = enumerate_full_subgroups(model)
    records = {res.lattice: classify(spec, res.lattice) for res in results}
    return OracleReport(n, spec.epsilon, compare(results, records))


def run_twisted(spec: ToralGroupSpec, n: int, cap: int = DEFAULT_CAP) -> tuple[list[OracleReport], bool]:
    """Oracle runs for every nonzero ε, plus multiset agreement of the per-ε count profiles."""
    reports = []
    predicted, observed = Counter(), Counter()
    for eps in spec.all_epsilons():
        if not any(eps):
            continue
        rep = run(spec.with_epsilon(eps), n, cap)
        reports.append(rep)
        observed[rep.profile()] += 1
        predicted[tuple((row.lattice.sort_key(), row.predicted) for row in rep.rows)] += 1
    return reports, predicted == observed
