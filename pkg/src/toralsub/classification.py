"""Classification of full subgroups H(S, σ) of a toral group G.

For a W-invariant Λ^S ⊆ Λ^0 with dual Λ_S and restriction k_S: Λ_0 → Λ_S
(the matrix L^T), the relevant part of the ramification sequence is

    H^2(W;Λ_0) --a1--> H^2(W;Λ_S) --> H^2(W;S) --> H^3(W;Λ_0) --a2--> H^3(W;Λ_S)

A full subgroup over S exists iff a2(ε) = 0; the conjugacy classes are
then a torsor for H^2(W;Λ_S) ≅ H^1(W;T/S), and the extension isomorphism
classes are the cokernel of a1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

from .cohomology import CohomologyGroup, InducedMap, complex_for, group_cohomology, induced_map
from .intlin import FinAb
from .lattices import Lattice
from .normalizers import WeylGroup, weyl
from .wgroup import NotInvariant, WGroup, WModule, close, dual_module, is_invariant, module_fingerprint, restrict_module


class NotASection(ValueError):
    pass


class ToralGroupSpec:
    """G = T^r · W given by W ≤ GL_r(Z) acting on Λ^0 and an extension class ε.

    epsilon is "split" or a coordinate tuple in this tool's invariant-factor
    basis of H^3(W; Λ_0).
    """

    def __init__(self, group: WGroup, epsilon="split", name: str = ""):
        self.group = group
        self.name = name
        self.module = WModule.standard(group)
        self.lambda_0, _ = dual_module(self.module)
        if isinstance(epsilon, str):
            if epsilon != "split":
                raise ValueError(f"unknown epsilon {epsilon!r}")
            self.epsilon = tuple(0 for _ in self.h3_0.group.torsion)
        else:
            tors = self.h3_0.group.torsion
            eps = tuple(int(x) for x in epsilon)
            if len(eps) != len(tors):
                raise ValueError(f"epsilon needs {len(tors)} coordinates for H^3 = {self.h3_0.group}")
            self.epsilon = tuple(x % d for x, d in zip(eps, tors))

    @classmethod
    def from_generators(cls, generators, epsilon="split", name: str = "") -> ToralGroupSpec:
        return cls(close(generators), epsilon, name)

    def with_epsilon(self, epsilon) -> ToralGroupSpec:
        return ToralGroupSpec(self.group, epsilon, self.name)

    @property
    def rank(self) -> int:
        return self.group.ambient_rank

    @property
    def is_split(self) -> bool:
        return not any(self.epsilon)

    @cached_property
    def h2_0(self) -> CohomologyGroup:
        return group_cohomology(self.lambda_0, 2)

    @cached_property
    def h3_0(self) -> CohomologyGroup:
        return group_cohomology(self.lambda_0, 3)

    def all_epsilons(self) -> list[tuple[int, ...]]:
        return list(self.h3_0.elements())

    def epsilon_order(self) -> int:
        e = 1
        for c, d in zip(self.epsilon, self.h3_0.group.torsion):
            e = math.lcm(e, d // math.gcd(d, c))
        return e

    def torus_cocycle(self) -> tuple[int, list[list[tuple[int, ...]]]]:
        """(e, Y) with the normalised T-valued 2-cocycle c(v,w) = Y[v][w]/e mod Λ_0.

        Y solves δY = e·z for the representative 3-cocycle z of ε, so c maps
        to ε under the connecting isomorphism H^2(W;T) ≅ H^3(W;Λ_0).
        """
        w = self.group
        n, r = w.order, self.rank
        if self.is_split:
            return 1, [[(0,) * r for _ in range(n)] for _ in range(n)]
        e = self.epsilon_order()
        z = self.h3_0.element(self.epsilon)
        cc = complex_for(self.lambda_0)
        y = cc.elimination(2).solve([e * x for x in z])
        if y is None:
            raise AssertionError("e·z is not a coboundary")
        table = [[tuple(y[(v * n + u) * r:(v * n + u) * r + r]) for u in range(n)] for v in range(n)]
        kappa = table[w.identity][w.identity]
        out = []
        for v in range(n):
            row = []
            for u in range(n):
                shift = w.elements[u].T @ kappa  # κ^u for the right action A(u)^T
                row.append(tuple(a - b for a, b in zip(table[v][u], shift)))
            out.append(row)
        return e, out

    def __repr__(self):
        eps = "split" if self.is_split else self.epsilon
        return f"ToralGroupSpec({self.name or self.group.structure_name()}, eps={eps})"


@dataclass
class ClassificationRecord:
    lattice: Lattice
    module_tag: str
    lift_exists: bool
    n_conjugacy: int
    n_extension_iso: int
    conj_per_ext: int
    weyl: WeylGroup
    h2_0: FinAb
    h2_s: FinAb
    h3_0: FinAb
    h3_s: FinAb
    a1: tuple = field(repr=False)
    a2: tuple = field(repr=False)
    image_of_epsilon: tuple = ()

    @property
    def dim(self) -> int:
        return self.lattice.corank


def _lambda_s(spec: ToralGroupSpec, l: Lattice):
    sub = restrict_module(spec.module, l)
    lam_s, k_s = dual_module(sub)
    return lam_s, k_s


def induced_maps(spec: ToralGroupSpec, l: Lattice) -> tuple[InducedMap, InducedMap, WModule]:
    lam_s, k_s = _lambda_s(spec, l)
    a1 = induced_map(k_s, spec.lambda_0, lam_s, 2)
    a2 = induced_map(k_s, spec.lambda_0, lam_s, 3)
    return a1, a2, lam_s


def classify(spec: ToralGroupSpec, l: Lattice) -> ClassificationRecord:
    if not is_invariant(l, spec.group):
        raise NotInvariant("sublattice is not W-invariant")
    a1, a2, lam_s = induced_maps(spec, l)
    image = a2(spec.epsilon)
    lift = not any(image)
    h2s = a1.target.group
    if lift:
        n_conj = h2s.order()
        n_ext = a1.cokernel().order()
        per = a1.image_order()
    else:
        n_conj = n_ext = per = 0
    return ClassificationRecord(
        lattice=l,
        module_tag=module_fingerprint(lam_s),
        lift_exists=lift,
        n_conjugacy=n_conj,
        n_extension_iso=n_ext,
        conj_per_ext=per,
        weyl=weyl(spec.group, l),
        h2_0=a1.source.group,
        h2_s=h2s,
        h3_0=a2.source.group,
        h3_s=a2.target.group,
        a1=a1.matrix,
        a2=a2.matrix,
        image_of_epsilon=image,
    )


def classify_all(spec: ToralGroupSpec, lattices: Sequence[Lattice]) -> list[ClassificationRecord]:
    return [classify(spec, l) for l in lattices]


# --- sections and factor sets ------------------------------------------------

@dataclass
class FactorSet:
    valid: bool
    values: dict  # (v, w) -> T-coordinates in [0,1)^r


def _frac_mod1(x) -> Fraction:
    x = Fraction(x)
    return x - math.floor(x)


def standard_form_check(
    spec: ToralGroupSpec, l: Lattice, sigma: Mapping[int, Sequence]
) -> FactorSet:
    """Factor set f(v,w) = σ(vw)^{-1} σ(v) σ(w) of a section σ over W.

    σ(v) is given by its T-coordinates (rationals mod 1 in the Λ_0 basis).
    Elements of G are written (a, v) with (a,v)(b,w) = (c(v,w) + a^w + b, vw),
    so f(v,w) = c(v,w) + σ(v)^w + σ(w) - σ(vw).  Valid iff every value lies
    in S = {t : L^T t ∈ Z^k}.
    """
    w = spec.group
    n, r = w.order, spec.rank
    if set(sigma) != set(range(n)):
        raise NotASection("section must be defined on every element of W")
    sig = {v: tuple(_frac_mod1(x) for x in sigma[v]) for v in range(n)}
    if any(len(s) != r for s in sig.values()):
        raise NotASection("T-coordinates of the wrong length")
    if any(sig[w.identity]):
        raise NotASection("section is not normalised at the identity")
    e, y = spec.torus_cocycle()
    lt = l.basis.T
    values = {}
    valid = True
    for v in range(n):
        for u in range(n):
            at = w.elements[u].T
            sv_u = at @ sig[v]
            f = tuple(
                _frac_mod1(Fraction(y[v][u][a], e) + sv_u[a] + sig[u][a] - sig[w.mul(v, u)][a])
                for a in range(r)
            )
            values[(v, u)] = f
            if any(Fraction(x).denominator != 1 for x in (lt @ f if lt.cols else ())):
                valid = False
    return FactorSet(valid, values)
