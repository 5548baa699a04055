"""Finite integral matrix groups W ≤ GL_r(Z) and ZW-lattices.

Convention: the matrices A(g) act on column coordinates of Λ^0 = T^*, and
g ↦ A(g) is a homomorphism (A(gh) = A(g)A(h)).  A WModule records the
left action P(g) on its own basis; the bar complex uses the right action
m^v = P(v)^{-1} m.
"""

from __future__ import annotations

from collections import deque
from typing import Sequence

from .intlin import IntMatrix, QuotientMap, hnf, kernel, rational_rank
from .lattices import AmbientMismatch, Lattice, NotContained, dual_presentation

DEFAULT_CAP = 48


class NotUnimodular(ValueError):
    pass


class GroupTooLarge(RuntimeError):
    pass


class NotInvariant(ValueError):
    pass


def _as_matrix(m) -> IntMatrix:
    return m if isinstance(m, IntMatrix) else IntMatrix(m)


class WGroup:
    """A finite group of integer matrices with its full multiplication table."""

    def __init__(self, generators, elements, mult_table, identity):
        self.generators = tuple(generators)
        self.elements = tuple(elements)
        self.mult_table = tuple(tuple(r) for r in mult_table)
        self.identity = identity
        self.ambient_rank = self.elements[0].rows
        self._index = {e: i for i, e in enumerate(self.elements)}
        self.generator_indices = tuple(self._index[g] for g in self.generators)
        self._inverse = tuple(row.index(identity) for row in self.mult_table)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def index(self, m) -> int:
        return self._index[_as_matrix(m)]

    def mul(self, a: int, b: int) -> int:
        return self.mult_table[a][b]

    def inverse(self, a: int) -> int:
        return self._inverse[a]

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.mult_table[x][a]
            k += 1
        return k

    def is_abelian(self) -> bool:
        n = self.order
        return all(self.mult_table[a][b] == self.mult_table[b][a] for a in range(n) for b in range(n))

    def cayley_tree(self):
        """BFS spanning tree of the Cayley graph for right multiplication by generators.

        Returns (order, parent, slot): every non-identity u equals
        parent[u] * generators[slot[u]], and ``order`` lists the
        non-identity elements parents-first.
        """
        n = self.order
        parent: list[int | None] = [None] * n
        slot: list[int | None] = [None] * n
        seen = {self.identity}
        order = []
        queue = deque([self.identity])
        while queue:
            u = queue.popleft()
            for s, g in enumerate(self.generator_indices):
                v = self.mult_table[u][g]
                if v not in seen:
                    seen.add(v)
                    parent[v] = u
                    slot[v] = s
                    order.append(v)
                    queue.append(v)
        return order, parent, slot

    def structure_name(self) -> str:
        """Isomorphism type among the small groups that occur: 1, C_n, C2xC2, D_2n."""
        n = self.order
        if n == 1:
            return "1"
        orders = sorted(self.element_order(a) for a in range(n))
        if max(orders) == n:
            return f"C{n}"
        if self.is_abelian():
            if n == 4:
                return "C2xC2"
            return f"abelian{n}"
        invol = sum(1 for o in orders if o == 2)
        if n % 2 == 0 and max(orders) == n // 2 and invol >= n // 2:
            return f"D{n}"
        return f"group{n}"

    def __repr__(self):
        return f"WGroup(order={self.order}, rank={self.ambient_rank})"


def close(generators: Sequence, cap: int = DEFAULT_CAP, rank: int | None = None) -> WGroup:
    gens = [_as_matrix(g) for g in generators]
    if not gens:
        if rank is None:
            raise ValueError("rank needed for the trivial group")
        gens_eff = []
        r = rank
    else:
        r = gens[0].rows
        gens_eff = gens
    for g in gens:
        if g.shape != (r, r):
            raise AmbientMismatch("generators of different sizes")
        if not g.is_unimodular():
            raise NotUnimodular(f"generator {g} is not invertible over Z")
    ident = IntMatrix.identity(r)
    elements = [ident]
    seen = {ident: 0}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens_eff:
            y = x @ g
            if y not in seen:
                if len(elements) >= cap:
                    raise GroupTooLarge(f"group exceeds {cap} elements")
                seen[y] = len(elements)
                elements.append(y)
                queue.append(y)
    mult = [[seen[a @ b] for b in elements] for a in elements]
    return WGroup(gens, elements, mult, 0)


def is_invariant(l: Lattice, w: WGroup) -> bool:
    if l.ambient_rank != w.ambient_rank:
        raise AmbientMismatch("lattice and group live in different ranks")
    # A L ⊆ L suffices: A has finite order, so A L = L
    return all((g @ c) in l for g in w.generators for c in l.columns())


class WModule:
    """A lattice with W-action P(g) on its own basis.

    ``lattice`` is the underlying sublattice of Z^r when the module comes
    from the defining representation; abstract modules (duals) have none.
    """

    def __init__(self, group: WGroup, action: Sequence, lattice: Lattice | None = None, check: bool = True):
        self.group = group
        self.action = tuple(_as_matrix(a) for a in action)
        if len(self.action) != group.order:
            raise ValueError("need one action matrix per group element")
        self.rank = self.action[0].rows if self.action else 0
        self.lattice = lattice
        if check:
            self._check()

    def _check(self):
        n = self.group.order
        for a in self.action:
            if a.shape != (self.rank, self.rank):
                raise ValueError("action matrix has the wrong size")
            if self.rank and not a.is_unimodular():
                raise NotUnimodular("action matrix is not unimodular")
        mt = self.group.mult_table
        for i in range(n):
            for j in range(n):
                if self.action[mt[i][j]] != self.action[i] @ self.action[j]:
                    raise ValueError("action is not a homomorphism")

    @classmethod
    def standard(cls, w: WGroup) -> WModule:
        return cls(w, w.elements, Lattice.ambient(w.ambient_rank), check=False)

    @classmethod
    def trivial(cls, w: WGroup, rank: int = 1) -> WModule:
        return cls(w, [IntMatrix.identity(rank)] * w.order, check=False)

    @classmethod
    def sign(cls, w: WGroup, signs: Sequence[int]) -> WModule:
        """Rank-one module with the given ±1 character on each element."""
        return cls(w, [IntMatrix([[s]]) for s in signs])

    def right_action(self, v: int) -> IntMatrix:
        return self.action[self.group.inverse(v)]

    def key(self):
        return (self.rank, tuple(self.action[g] for g in self.group.generator_indices), id(self.group))

    def is_equivariant(self, f: IntMatrix, other: WModule) -> bool:
        """f: self → other commutes with the actions."""
        return all(f @ self.action[g] == other.action[g] @ f for g in self.group.generator_indices)

    def __repr__(self):
        return f"WModule(rank={self.rank}, |W|={self.group.order})"


def restrict_module(m: WModule, l: Lattice) -> WModule:
    """Transport the action of m to the invariant sublattice l."""
    if m.lattice is None:
        raise ValueError("module has no ambient lattice")
    if not m.lattice.contains(l):
        raise NotContained("lattice is not inside the module")
    dp = dual_presentation(m.lattice, l)
    try:
        action = [dp.transport(a) for a in m.action] if l.rank else [IntMatrix.zeros(0, 0)] * m.group.order
    except ValueError as exc:
        raise NotInvariant(str(exc)) from None
    return WModule(m.group, action, l, check=False)


def dual_module(m: WModule):
    """(dual module with contragredient action, comparison map Λ_0 → dual).

    The comparison map is X^t where X expresses m's lattice basis in the
    ambient coordinates; it is None for abstract modules.
    """
    w = m.group
    action = [m.action[w.inverse(g)].T for g in range(w.order)]
    dual = WModule(w, action, None, check=False)
    comp = m.lattice.basis.T if m.lattice is not None else None
    return dual, comp


# --- fingerprints ----------------------------------------------------------

def _fixed(mats, sign=1):
    """Lattice of vectors v with A v = sign·v for all A in mats."""
    r = mats[0].rows
    stack = None
    for a in mats:
        b = a - IntMatrix.identity(r).scale(sign)
        stack = b if stack is None else stack.vstack(b)
    k = kernel(stack)
    return Lattice(k) if k.cols else Lattice.zero(r)


def _eigen_index(a: IntMatrix) -> int:
    """Index of L_+ ⊕ L_- in the lattice for an involution a (0 if not of full rank)."""
    plus, minus = _fixed([a], 1), _fixed([a], -1)
    cols = plus.columns() + minus.columns()
    if len(cols) < a.rows:
        return 0
    return QuotientMap(hnf(IntMatrix.from_columns(cols, a.rows)), IntMatrix.identity(a.rows)).group.order()


def _c2_tag(a: IntMatrix) -> str:
    r = a.rows
    if r == 1:
        return "Z" if a[0, 0] == 1 else "Zt"
    if r != 2:
        return "unrecognized"
    if a == IntMatrix.identity(2):
        return "Z+Z"
    if a == IntMatrix.identity(2).scale(-1):
        return "Zt+Zt"
    return "Z+Zt" if _eigen_index(a) == 1 else "ZW"


def module_fingerprint(m: WModule) -> str:
    """Catalogue tag of a rank ≤ 2 module, by fixed-sublattice signatures."""
    w = m.group
    if m.rank == 0:
        return "0"
    if m.rank > 2:
        return "unrecognized"
    ident = IntMatrix.identity(m.rank)
    # pass to the image of W acting on m
    images = {}
    for g in range(w.order):
        images.setdefault(m.action[g], g)
    mats = list(images)
    n = len(mats)
    if n == 1:
        return "Z" if m.rank == 1 else "Z+Z"
    if m.rank == 1:
        return "Zt"
    nontriv = [a for a in mats if a != ident]
    orders = []
    for a in mats:
        k, x = 1, a
        while x != ident:
            x = x @ a
            k += 1
        orders.append(k)
    if n == 2:
        return _c2_tag(nontriv[0])
    rotations = [a for a in mats if a.det() == 1]
    reflections = [a for a in mats if a.det() == -1]
    if n == 4 and max(orders) == 2:
        # Klein four: split iff the common eigenlines span
        lines = [_fixed([a], 1) for a in reflections]
        cols = [c for l in lines for c in l.columns()]
        idx = QuotientMap(hnf(IntMatrix.from_columns(cols, 2)), ident).group.order() if len(cols) == 2 else 0
        return "Zt1+Zt2" if idx == 1 else "Cub_delta"
    if n == 4:
        return "Cub_pi/2"
    if n == 3 or (n == 6 and not reflections):
        return "Z[w]"
    if n == 8:
        # B2 when the reflections of the defining representation with spanning
        # eigenlines act on m with spanning eigenlines too
        defining = [g for g in range(w.order) if w.elements[g].det() == -1 and _eigen_index(w.elements[g]) == 1]
        if not defining:
            return "unrecognized"
        g = defining[0]
        return "B2" if _eigen_index(m.action[g]) == 1 else "FCC_B2"
    if n == 6 and reflections:
        # Z[w]' (H^1 = Z/3) has the fixed line of a reflection inside (1 - rho) m
        rho = next(a for a in rotations if a != ident)
        tau = reflections[0]
        fixed = _fixed([tau], 1)
        image = Lattice(rho - ident)
        return "Z[w]'" if image.contains(fixed) else "Z[w]''"
    if n == 12:
        return "G2"
    return "unrecognized"


def fixed_rank(mats: Sequence[IntMatrix]) -> int:
    """Dimension of the common fixed space of the matrices (over Q)."""
    r = mats[0].rows
    rows = []
    for a in mats:
        rows.extend((a - IntMatrix.identity(r)).tolist())
    return r - rational_rank(rows)
