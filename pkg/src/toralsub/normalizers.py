"""Weyl groups of full subgroups H(S, σ) from lattice data.

With M(g) = A(g) - I and L a basis of Λ^S, the dual of S^+ is
Λ^S_+ = Σ_g M(g) L, and W_G(H) = S^+/S is dual to Λ^S / Λ^S_+: its
identity component has dimension rank Λ^S - rank Λ^S_+ and its component
group is the torsion of Λ^S / Λ^S_+.
"""

from __future__ import annotations

from dataclasses import dataclass

from .intlin import FinAb, IntMatrix, QuotientMap, rational_rank
from .lattices import Lattice, NotContained, lattice_sum
from .wgroup import WGroup, NotInvariant, is_invariant


@dataclass(frozen=True)
class WeylGroup:
    torus_rank: int
    component_group: FinAb

    def is_finite(self) -> bool:
        return self.torus_rank == 0

    def describe(self) -> str:
        parts = []
        if self.torus_rank:
            parts.append("T" if self.torus_rank == 1 else f"T^{self.torus_rank}")
        if self.component_group.torsion or not parts:
            parts.append(self.component_group.short() if self.component_group.torsion else "1")
        return " x ".join(parts)


def _check(w: WGroup, l: Lattice) -> None:
    if not is_invariant(l, w):
        raise NotInvariant("sublattice is not W-invariant")


def lambda_plus(w: WGroup, l: Lattice, all_elements: bool = False) -> Lattice:
    """Σ_g (A(g) - I) L over the generators (or over every element)."""
    r = w.ambient_rank
    ident = IntMatrix.identity(r)
    mats = w.elements if all_elements else w.generators
    if l.rank == 0:
        return Lattice.zero(r)
    parts = [l.image(a - ident) for a in mats]
    return lattice_sum(*parts) if parts else Lattice.zero(r)


def weyl(w: WGroup, l: Lattice) -> WeylGroup:
    _check(w, l)
    plus = lambda_plus(w, l)
    q = QuotientMap(plus.basis, l.basis).group
    return WeylGroup(l.rank - plus.rank, FinAb(0, q.torsion))


def finite_weyl_criterion(w: WGroup, l: Lattice) -> bool:
    """dim S^W == dim T^W, by rational linear algebra on T = LT/Λ_0.

    In Λ_0 coordinates g acts by A(g)^{-T}, so x is fixed iff (A(g)^T - I) x = 0;
    the Lie algebra of S is the annihilator of Λ^S, i.e. L^T x = 0.
    """
    _check(w, l)
    r = w.ambient_rank
    ident = IntMatrix.identity(r)
    rows = []
    for a in w.generators:
        rows.extend((a.T - ident).tolist())
    dim_tw = r - rational_rank(rows) if rows else r
    srows = rows + l.basis.T.tolist()
    dim_sw = r - rational_rank(srows) if srows else r
    return dim_sw == dim_tw


@dataclass(frozen=True)
class ComponentMap:
    source: FinAb
    target: FinAb
    matrix: tuple[tuple[int, ...], ...]  # target coords × source generators

    def is_zero(self) -> bool:
        t = self.target.torsion
        return all(x % t[k] == 0 for k, row in enumerate(self.matrix) for x in row)


def component_map(w: WGroup, lam_f: Lattice, lam_s: Lattice) -> ComponentMap:
    """torsion(Λ^S/Λ^S_+) → torsion(Λ^F/Λ^F_+) induced by Λ^S ⊆ Λ^F."""
    if not lam_f.contains(lam_s):
        raise NotContained("Λ^S must lie inside Λ^F")
    _check(w, lam_f)
    _check(w, lam_s)
    qs = QuotientMap(lambda_plus(w, lam_s).basis, lam_s.basis)
    qf = QuotientMap(lambda_plus(w, lam_f).basis, lam_f.basis)
    nt = len(qf.group.torsion)
    cols = [qf.project(v)[:nt] for v in qs.torsion_generators()]
    matrix = tuple(tuple(col[k] for col in cols) for k in range(nt))
    return ComponentMap(FinAb(0, qs.group.torsion), FinAb(0, qf.group.torsion), matrix)
