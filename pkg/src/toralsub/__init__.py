"""Classification of full subgroups of toral groups T^r · W.

Exact integer linear algebra, W-invariant lattices, bar-complex
cohomology, the ramification-sequence classification, Weyl groups,
the space of full subgroups and a finite-model oracle.
"""

from .classification import ClassificationRecord, ToralGroupSpec, classify, classify_all
from .cohomology import CochainComplex, group_cohomology, induced_map
from .intlin import FinAb, IntMatrix, hnf, snf
from .lattices import Lattice, mu
from .normalizers import WeylGroup, weyl
from .wgroup import WGroup, WModule, close

__version__ = "0.1.0"

__all__ = [
    "ClassificationRecord", "ToralGroupSpec", "classify", "classify_all",
    "CochainComplex", "group_cohomology", "induced_map",
    "FinAb", "IntMatrix", "hnf", "snf", "Lattice", "mu",
    "WeylGroup", "weyl", "WGroup", "WModule", "close",
]
