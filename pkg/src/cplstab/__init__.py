"""Exact CPL basis vectors of sl2[t] local Weyl modules inside the level-1 Fock realization."""
from .combinatorics import IndexTriple, Partition, SetPartition
from .fock import BACKEND, AlgebraGen, FockState, FockVector
from .weights import AffineWeight

__all__ = [
    "AffineWeight", "AlgebraGen", "BACKEND", "FockState", "FockVector",
    "IndexTriple", "Partition", "SetPartition",
]
__version__ = "0.1.0"
