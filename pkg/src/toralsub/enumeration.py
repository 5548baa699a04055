"""Enumeration of W-invariant sublattices Λ^S ⊆ Λ^0.

Full-rank sublattices of bounded index are listed through their Hermite
normal forms and filtered by invariance.  The closed-form families of the
rank-2 catalogue are kept here too, so tests can compare both listings.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace
from typing import Callable

from .catalogue import group_key_of
from .intlin import IntMatrix, kernel
from .lattices import Lattice, intersect
from .wgroup import WGroup, is_invariant


class UnknownTag(KeyError):
    pass


def _factorizations(d: int, r: int):
    """Ordered r-tuples of positive integers with product d."""
    if r == 1:
        yield (d,)
        return
    for a in range(1, d + 1):
        if d % a == 0:
            for rest in _factorizations(d // a, r - 1):
                yield (a,) + rest


def hnf_of_index(r: int, d: int):
    """All lower-triangular column HNFs of rank r and determinant d."""
    for diag in _factorizations(d, r):
        slots = [(i, j) for i in range(r) for j in range(i)]
        ranges = [range(diag[i]) for i, _ in slots]
        for vals in itertools.product(*ranges):
            h = [[0] * r for _ in range(r)]
            for i in range(r):
                h[i][i] = diag[i]
            for (i, j), v in zip(slots, vals):
                h[i][j] = v
            yield IntMatrix(h)


def enumerate_full_rank(w: WGroup, lambda_0: Lattice | None = None, max_index: int = 10) -> list[Lattice]:
    """Invariant full-rank Λ^S ⊆ Λ^0 with [Λ^0 : Λ^S] ≤ max_index, sorted by (index, HNF)."""
    r = w.ambient_rank
    base = lambda_0 if lambda_0 is not None else Lattice.ambient(r)
    if not base.is_full_rank():
        raise ValueError("Λ^0 must be full rank")
    if not is_invariant(base, w):
        raise ValueError("Λ^0 is not W-invariant")
    out = []
    for d in range(1, max_index + 1):
        found = []
        for h in hnf_of_index(r, d):
            l = Lattice(base.basis @ h)
            if is_invariant(l, w):
                found.append(l)
        out.extend(sorted(found, key=Lattice.sort_key))
    return out


def _primitive(v):
    g = 0
    for x in v:
        g = math.gcd(g, x)
    v = [x // g for x in v]
    for x in v:
        if x:
            return tuple(v) if x > 0 else tuple(-y for y in v)
    return tuple(v)


def _eigenlines(w: WGroup) -> list[tuple[int, ...]]:
    ident = IntMatrix.identity(2)
    lines = set()
    for g in w.elements:
        for s in (1, -1):
            k = kernel(g - ident.scale(s))
            if k.cols == 1:
                lines.add(_primitive(k.column(0)))
    return sorted(v for v in lines if is_invariant(Lattice([v], 2), w))


def enumerate_corank(w: WGroup, lambda_0: Lattice | None, k: int, max_scale: int) -> list[Lattice]:
    """Invariant Λ^S of rank r - k.

    k = 0 delegates to the full-rank listing with max_scale read as the
    index bound.  For r = 2, k = 1 the lattices are the multiples m·ℓ
    (1 ≤ m ≤ max_scale) of the invariant lines ℓ ∩ Λ^0; when every
    element acts as ±I each primitive direction with max-norm at most
    max_scale is a line.
    """
    r = w.ambient_rank
    base = lambda_0 if lambda_0 is not None else Lattice.ambient(r)
    if not 0 <= k <= r:
        raise ValueError(f"corank {k} outside 0..{r}")
    if k == r:
        return [Lattice.zero(r)]
    if k == 0:
        return enumerate_full_rank(w, base, max_scale)
    if r != 2:
        raise NotImplementedError("corank enumeration is implemented for rank 2 only")
    ident = IntMatrix.identity(2)
    if all(g == ident or g == ident.scale(-1) for g in w.elements):
        dirs = set()
        for v in itertools.product(range(-max_scale, max_scale + 1), repeat=2):
            if any(v) and math.gcd(*v) == 1:
                dirs.add(_primitive(v))
        dirs = sorted(dirs)
    else:
        dirs = _eigenlines(w)
    out = set()
    for v in dirs:
        line = intersect(Lattice([v], 2), base)
        for m in range(1, max_scale + 1):
            out.add(line.scale(m))
    return sorted(out, key=Lattice.sort_key)


# --- closed-form families ----------------------------------------------------

@dataclass(frozen=True)
class InvariantFamily:
    """A parametrised family of invariant sublattices.

    ``basis`` maps parameters to generators, ``valid`` says which parameter
    tuples are allowed, ``index`` gives [Λ^0 : Λ] for full-rank families
    (None for lower rank).  ``module_tag`` is the fingerprint of the dual
    Λ_S of every member.
    """

    name: str
    params: tuple[str, ...]
    rank: int
    basis: Callable[..., list]
    valid: Callable[..., bool]
    index: Callable[..., int] | None = None
    module_tag: str = ""

    def lattice(self, *p) -> Lattice:
        if not self.valid(*p):
            raise ValueError(f"{self.name}: invalid parameters {p}")
        return Lattice(self.basis(*p), 2)

    def instances(self, bound: int) -> list[tuple[tuple[int, ...], Lattice]]:
        """Members with index ≤ bound (full rank) or parameters ≤ bound (rank 1)."""
        out = []
        for p in itertools.product(range(0, bound + 1), repeat=len(self.params)):
            if not self.valid(*p):
                continue
            if self.index is not None and self.index(*p) > bound:
                continue
            out.append((p, self.lattice(*p)))
        return out


def _pos(*p):
    return all(x >= 1 for x in p)


_RECT = InvariantFamily("Type1", ("m", "n"), 2, lambda m, n: [(m, 0), (0, n)], _pos, lambda m, n: m * n)
_RHOMB = InvariantFamily("Type2", ("m", "n"), 2, lambda m, n: [(m, n), (m, -n)], _pos, lambda m, n: 2 * m * n)
_X_AXIS = InvariantFamily("Λ_+", ("m",), 1, lambda m: [(m, 0)], _pos)
_Y_AXIS = InvariantFamily("Λ_−", ("n",), 1, lambda n: [(0, n)], _pos)

_DIAG = InvariantFamily("Type1", ("m", "n"), 2, lambda m, n: [(m, m), (n, -n)], _pos, lambda m, n: 2 * m * n)
_DIAG2 = InvariantFamily(
    "Type2", ("m", "n"), 2,
    lambda m, n: [((m + n) // 2, (m - n) // 2), ((m - n) // 2, (m + n) // 2)],
    lambda m, n: _pos(m, n) and (m - n) % 2 == 0,
    lambda m, n: m * n,
)
_PLUS_DIAG = InvariantFamily("Λ_+", ("m",), 1, lambda m: [(m, m)], _pos)
_MINUS_DIAG = InvariantFamily("Λ_−", ("m",), 1, lambda m: [(m, -m)], _pos)

_ALL = InvariantFamily(
    "all", ("a", "b", "c"), 2,
    lambda a, b, c: [(a, b), (0, c)],
    lambda a, b, c: a >= 1 and c >= 1 and 0 <= b < c,
    lambda a, b, c: a * c,
)

_GAUSS = InvariantFamily(
    "gaussian_ideal", ("a", "b"), 2,
    lambda a, b: [(a, b), (-b, a)],
    lambda a, b: a >= 1 and b >= 0,
    lambda a, b: a * a + b * b,
)
_SQUARE = InvariantFamily("Type1", ("m",), 2, lambda m: [(m, 0), (0, m)], _pos, lambda m: m * m)
_SQUARE2 = InvariantFamily("Type2", ("m",), 2, lambda m: [(m, m), (m, -m)], _pos, lambda m: 2 * m * m)

_EISENSTEIN = InvariantFamily(
    "eisenstein_ideal", ("a", "b"), 2,
    lambda a, b: [(a, b), (-b, a - b)],
    lambda a, b: a >= 1 and 0 <= b < a,
    lambda a, b: a * a - a * b + b * b,
)
_MULT = InvariantFamily("multiples", ("n",), 2, lambda n: [(n, 0), (0, n)], _pos, lambda n: n * n)
_ROOT3 = InvariantFamily("root3_multiples", ("n",), 2, lambda n: [(2 * n, n), (-n, n)], _pos, lambda n: 3 * n * n)


def _tagged(*pairs):
    return tuple(replace(f, module_tag=t) for f, t in pairs)


FAMILIES: dict[str, tuple[InvariantFamily, ...]] = {
    "C2/Z+Zt": _tagged((_RECT, "Z+Zt"), (_RHOMB, "ZW"), (_X_AXIS, "Z"), (_Y_AXIS, "Zt")),
    "C2/Zt+Zt": _tagged((_ALL, "Zt+Zt")),
    "C2/ZW": _tagged((_DIAG, "Z+Zt"), (_DIAG2, "ZW"), (_PLUS_DIAG, "Z"), (_MINUS_DIAG, "Zt")),
    "C2xC2/A1xA1": _tagged((_RECT, "Zt1+Zt2"), (_RHOMB, "Cub_delta"), (_X_AXIS, "Zt"), (_Y_AXIS, "Zt")),
    "C2xC2/Cub_delta": _tagged((_DIAG, "Zt1+Zt2"), (_DIAG2, "Cub_delta"), (_PLUS_DIAG, "Zt"), (_MINUS_DIAG, "Zt")),
    "C4/Cub": _tagged((_GAUSS, "Cub_pi/2")),
    "D8/B2": _tagged((_SQUARE, "B2"), (_SQUARE2, "FCC_B2")),
    "C3/Z[w]": _tagged((_EISENSTEIN, "Z[w]")),
    "D6/A2": _tagged((_MULT, "Z[w]'"), (_ROOT3, "Z[w]''")),
    "D6/Z[w]''": _tagged((_MULT, "Z[w]''"), (_ROOT3, "Z[w]'")),
    "D12/G2": _tagged((_MULT, "G2"), (_ROOT3, "G2")),
}


def match_families(row_tag: str) -> tuple[InvariantFamily, ...]:
    """Families of invariant Λ^S for a catalogue row id or (W, Λ_0) key."""
    try:
        return FAMILIES[group_key_of(row_tag)]
    except KeyError:
        raise UnknownTag(row_tag) from None


def family_lattices(row_tag: str, max_index: int) -> list[Lattice]:
    """Distinct full-rank family members of index ≤ max_index, sorted like the enumeration."""
    seen = set()
    for fam in match_families(row_tag):
        if fam.rank == 2:
            for _, l in fam.instances(max_index):
                seen.add(l)
    return sorted(seen, key=lambda l: (round(_index(l)), l.sort_key()))


def _index(l: Lattice) -> int:
    return abs(l.basis.det())
