"""The rank-2 catalogue: seventeen (W, Λ_0, Λ_S) rows.

Each row fixes W by generator matrices acting on Λ^0 = Z^2 and a
representative Λ^S whose dual module is the listed Λ_S.  Expected
cohomology values are not stored here; the CLI reads them from the
fixture file in ``data/``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .classification import ToralGroupSpec
from .lattices import Lattice
from .wgroup import WGroup, close

REFLECT_Y = [[1, 0], [0, -1]]
REFLECT_X = [[-1, 0], [0, 1]]
MINUS = [[-1, 0], [0, -1]]
SWAP = [[0, 1], [1, 0]]
ANTISWAP = [[0, -1], [-1, 0]]
QUARTER = [[0, -1], [1, 0]]
ROT3 = [[0, -1], [1, -1]]
ROT6 = [[1, -1], [1, 0]]
CONJ = [[1, -1], [0, -1]]
TAU2 = [[1, 0], [1, -1]]

# (W, Λ_0) pairs; key -> (W name, Λ_0 name, generators)
GROUPS = {
    "C2/Z+Zt": ("C2", "Z+Zt", [REFLECT_Y]),
    "C2/Zt+Zt": ("C2", "Zt+Zt", [MINUS]),
    "C2/ZW": ("C2", "ZW", [SWAP]),
    "C2xC2/A1xA1": ("C2xC2", "A1xA1", [REFLECT_Y, REFLECT_X]),
    "C2xC2/Cub_delta": ("C2xC2", "Cub_delta", [SWAP, ANTISWAP]),
    "C4/Cub": ("C4", "Cub", [QUARTER]),
    "D8/B2": ("D8", "B2", [QUARTER, REFLECT_Y]),
    "C3/Z[w]": ("C3", "Z[w]", [ROT3]),
    "D6/A2": ("D6", "A2", [ROT3, CONJ]),
    "D6/Z[w]''": ("D6", "Z[w]''", [ROT3, TAU2]),
    "D12/G2": ("D12", "G2", [ROT6, CONJ]),
}

EVEN = [(1, 1), (1, -1)]
WHOLE = [(1, 0), (0, 1)]


@dataclass(frozen=True)
class CatalogueRow:
    row_id: str
    group_key: str
    lambda_s_name: str
    representative: tuple  # generators of Λ^S
    starred: bool  # the connecting maps are forced by the groups alone

    @property
    def w_name(self) -> str:
        return GROUPS[self.group_key][0]

    @property
    def lambda_0_name(self) -> str:
        return GROUPS[self.group_key][1]

    def group(self) -> WGroup:
        return group_for(self.group_key)

    def lattice(self) -> Lattice:
        return Lattice(list(self.representative), 2)

    def spec(self, epsilon="split") -> ToralGroupSpec:
        return ToralGroupSpec(self.group(), epsilon, self.group_key)


def _row(group_key, ls_name, rep, starred=False):
    return CatalogueRow(f"{group_key}/{ls_name}", group_key, ls_name, tuple(rep), starred)


ROWS = (
    _row("C2/Z+Zt", "Z+Zt", WHOLE),
    _row("C2/Z+Zt", "ZW", EVEN, True),
    _row("C2/Zt+Zt", "Zt+Zt", WHOLE),
    _row("C2/ZW", "Z+Zt", EVEN, True),
    _row("C2/ZW", "ZW", WHOLE, True),
    _row("C2xC2/A1xA1", "Zt1+Zt2", WHOLE),
    _row("C2xC2/A1xA1", "FCC", EVEN),
    _row("C2xC2/Cub_delta", "Cub_delta", WHOLE),
    _row("C2xC2/Cub_delta", "FCC_delta", EVEN),
    _row("C4/Cub", "Cub", WHOLE),
    _row("C4/Cub", "FCC", EVEN),
    _row("D8/B2", "B2", WHOLE),
    _row("D8/B2", "FCC_B2", EVEN),
    _row("C3/Z[w]", "Z[w]", WHOLE),
    _row("D6/A2", "Z[w]'", WHOLE, True),
    _row("D6/Z[w]''", "Z[w]''", WHOLE),
    _row("D12/G2", "Z[w]'", WHOLE, True),
)

ROW_IDS = tuple(r.row_id for r in ROWS)


@lru_cache(maxsize=None)
def group_for(group_key: str) -> WGroup:
    if group_key not in GROUPS:
        raise KeyError(group_key)
    return close(GROUPS[group_key][2])


def row(row_id: str) -> CatalogueRow:
    for r in ROWS:
        if r.row_id == row_id:
            return r
    raise KeyError(row_id)


def group_key_of(tag: str) -> str:
    """Accept a row id or a (W, Λ_0) key."""
    if tag in GROUPS:
        return tag
    return row(tag).group_key


def load_expected(path=None) -> dict:
    """Expected (A, B, D, E) per row id from the fixture file."""
    if path is None:
        text = resources.files("toralsub").joinpath("data/catalogue_expected.json").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    return json.loads(text)
