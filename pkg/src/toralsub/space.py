"""The space of conjugacy classes of full subgroups.

One stratum per (Λ^S, conjugacy class).  K is cotoral below H when
Λ^{S_H} ⊆ Λ^{S_K} with free quotient and the class of K maps to the
class of H under H^2(W;Λ_{S_K}) → H^2(W;Λ_{S_H}).  Classes are labelled
by elements of H^2(W;Λ_S) only for split ε, where the split section is a
base point; for nonsplit ε edges join every class of the two lattices
and are flagged ``fiberwise``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .classification import ClassificationRecord, ToralGroupSpec, classify
from .cohomology import induced_map
from .enumeration import enumerate_corank, enumerate_full_rank, match_families, UnknownTag
from .intlin import IntMatrix
from .lattices import Lattice, is_cofree, mu
from .wgroup import dual_module, restrict_module


@dataclass
class Stratum:
    id: str
    lattice: Lattice
    record: ClassificationRecord = field(repr=False)
    multiplicity: int  # 1..n_conjugacy
    h2_class: tuple | None = None  # coordinates in H^2(W;Λ_S) when ε is split

    @property
    def dim(self) -> int:
        return self.lattice.corank


@dataclass
class Edge:
    source: str  # cotoral below
    target: str
    fiberwise: bool = False


@dataclass
class SpaceGraph:
    spec: dict
    strata: list[Stratum]
    edges: list[Edge]
    caps: dict

    def stratum(self, sid: str) -> Stratum:
        for s in self.strata:
            if s.id == sid:
                return s
        raise KeyError(sid)

    def to_dict(self) -> dict:
        return {
            "spec": self.spec,
            "strata": [
                {
                    "id": s.id,
                    "lattice_hnf": s.lattice.tolist(),
                    "dim": s.dim,
                    "module_tag": s.record.module_tag,
                    "lift": s.record.lift_exists,
                    "n_conj": s.record.n_conjugacy,
                    "n_ext": s.record.n_extension_iso,
                    "weyl": {
                        "torus_rank": s.record.weyl.torus_rank,
                        "components": list(s.record.weyl.component_group.torsion),
                    },
                }
                for s in self.strata
            ],
            "cotoral_edges": [[e.source, e.target] for e in self.edges],
            "fiberwise": [e.fiberwise for e in self.edges],
            "caps": self.caps,
        }


def stratum_id(l: Lattice, k: int) -> str:
    return f"{l.label()}#{k}"


def _inclusion_dual(spec: ToralGroupSpec, small: Lattice, big: Lattice):
    """Λ_{S_K} → Λ_{S_H} for Λ^{S_H} = big ⊆ small = Λ^{S_K}, with both modules."""
    mod = spec.module
    lam_k, _ = dual_module(restrict_module(mod, small))
    lam_h, _ = dual_module(restrict_module(mod, big))
    cols = [small.coordinates(c) for c in big.columns()]
    x = IntMatrix.from_columns(cols, small.rank) if cols else IntMatrix.zeros(small.rank, 0)
    return x.T, lam_k, lam_h


def strata_for(records: Sequence[ClassificationRecord], split: bool) -> list[Stratum]:
    out = []
    for rec in records:
        if not rec.lift_exists:
            continue
        classes = list(_h2_elements(rec)) if split else [None] * rec.n_conjugacy
        for k, cls in enumerate(classes, start=1):
            out.append(Stratum(stratum_id(rec.lattice, k), rec.lattice, rec, k, cls))
    return out


def _h2_elements(rec: ClassificationRecord):
    import itertools

    return itertools.product(*(range(d) for d in rec.h2_s.torsion))


def cotoral_edges(spec: ToralGroupSpec, strata: Sequence[Stratum]) -> list[Edge]:
    """Edges K → H for cofree Λ^{S_H} ⊊ Λ^{S_K} with compatible classes."""
    by_lattice: dict[Lattice, list[Stratum]] = {}
    for s in strata:
        by_lattice.setdefault(s.lattice, []).append(s)
    lats = sorted(by_lattice, key=lambda l: (l.corank, l.sort_key()))
    edges = []
    for small in lats:
        for big in lats:
            if big == small or not small.contains(big) or not is_cofree(big, small):
                continue
            ks, hs = by_lattice[small], by_lattice[big]
            if len(ks) == 1 and len(hs) == 1:
                edges.append(Edge(ks[0].id, hs[0].id))
                continue
            if spec.is_split:
                f, lam_k, lam_h = _inclusion_dual(spec, small, big)
                phi = induced_map(f, lam_k, lam_h, 2)
                target = {h.h2_class: h for h in hs}
                for k in ks:
                    edges.append(Edge(k.id, target[phi(k.h2_class)].id))
            else:
                edges.extend(Edge(k.id, h.id, True) for k in ks for h in hs)
    return edges


def lattices_for(spec: ToralGroupSpec, max_index: int | None = None, max_param: int | None = None,
                 family_key: str | None = None) -> list[Lattice]:
    """Invariant Λ^S of every rank within the caps; the zero lattice is always included."""
    w = spec.group
    r = spec.rank
    found: set[Lattice] = set()
    families = None
    if family_key is not None and max_param is not None:
        try:
            families = match_families(family_key)
        except UnknownTag:
            families = None
    if families is not None:
        import itertools

        for fam in families:
            for p in itertools.product(range(max_param + 1), repeat=len(fam.params)):
                if fam.valid(*p):
                    found.add(fam.lattice(*p))
    else:
        found.update(enumerate_full_rank(w, None, max_index or 10))
        if r == 2:
            found.update(enumerate_corank(w, None, 1, max_param or max_index or 10))
    found.add(Lattice.zero(r))
    return sorted(found, key=lambda l: (l.corank, abs(l.basis.det()) if l.is_full_rank() else 0, l.sort_key()))


def build_space(spec: ToralGroupSpec, max_index: int | None = None, max_param: int | None = None,
                family_key: str | None = None) -> SpaceGraph:
    lats = lattices_for(spec, max_index, max_param, family_key)
    records = [classify(spec, l) for l in lats]
    strata = strata_for(records, spec.is_split)
    edges = cotoral_edges(spec, strata)
    spec_dict = {
        "name": spec.name,
        "rank": spec.rank,
        "generators": [g.tolist() for g in spec.group.generators],
        "epsilon": "split" if spec.is_split else list(spec.epsilon),
    }
    caps = {"max_index": max_index, "max_param": max_param}
    return SpaceGraph(spec_dict, strata, edges, caps)


# --- topology ------------------------------------------------------------------

def neighborhood(stratum: Stratum, t) -> Callable[[Stratum], bool]:
    """Metric predicate: Λ' ⊇ Λ^S and μ(Λ') > 1/t (informational)."""
    t = Fraction(t)
    if t <= 0:
        raise ValueError("t must be positive")
    base = stratum.lattice

    def member(other: Stratum) -> bool:
        if not other.lattice.contains(base):
            return False
        if other.lattice.rank == 0:
            return True
        return mu(other.lattice) > 1 / t

    return member


def combinatorial_neighborhood(graph: SpaceGraph, stratum: Stratum, tau: Iterable[str] = ()) -> set[str]:
    """U_τ = {K cotoral below H or K = H} minus the finite set τ."""
    tau = set(tau)
    below = {e.source for e in graph.edges if e.target == stratum.id}
    return ({stratum.id} | below) - tau


def hasse(edges: Sequence[Edge]) -> list[Edge]:
    """Covering edges of the cotoral relation."""
    succ: dict[str, set[str]] = {}
    for e in edges:
        succ.setdefault(e.source, set()).add(e.target)
    out = []
    for e in edges:
        mids = succ.get(e.source, set()) - {e.target}
        if any(e.target in succ.get(m, ()) for m in mids):
            continue
        out.append(e)
    return out


def export(graph: SpaceGraph, fmt: str = "json") -> bytes:
    if fmt == "json":
        return (json.dumps(graph.to_dict(), indent=2, sort_keys=True) + "\n").encode()
    if fmt == "dot":
        return _dot(graph).encode()
    raise ValueError(f"unknown format {fmt!r}")


def _dot(graph: SpaceGraph) -> str:
    lines = ["digraph space {", "  rankdir=BT;", "  node [shape=box, fontsize=10];"]
    dims = sorted({s.dim for s in graph.strata})
    for d in dims:
        lines.append(f"  subgraph dim{d} {{")
        lines.append("    rank=same;")
        for s in graph.strata:
            if s.dim == d:
                rec = s.record
                label = f"{s.lattice.label()}\\n{rec.module_tag} n_conj={rec.n_conjugacy}\\nW={rec.weyl.describe()}"
                lines.append(f'    "{s.id}" [label="{label}"];')
        lines.append("  }")
    for e in hasse(graph.edges):
        style = " [style=dashed]" if e.fiberwise else ""
        lines.append(f'  "{e.source}" -> "{e.target}"{style};')
    lines.append("}")
    return "\n".join(lines) + "\n"


__all__ = [
    "Stratum", "Edge", "SpaceGraph", "build_space", "cotoral_edges", "neighborhood",
    "combinatorial_neighborhood", "hasse", "export", "lattices_for", "strata_for", "stratum_id",
]
