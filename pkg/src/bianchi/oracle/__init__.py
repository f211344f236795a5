"""Brute-force verifiers, independent of the closed-form theory.

``subgroups`` searches SL2(o) directly for finite subgroups of the three
non-cyclic types within a height bound.  ``localtree`` re-counts the local
embedding numbers by enumerating vertices of the tree of maximal orders of
M2 over a ramified local field and intersecting exactly.
"""

from .subgroups import (
    OMatrix,
    SubgroupWitness,
    enumerate_torsion_elements,
    find_subgroup,
    verify_witness,
)
from .localtree import PrecisionError, count_maximal_orders_local

__all__ = [
    "OMatrix",
    "SubgroupWitness",
    "enumerate_torsion_elements",
    "find_subgroup",
    "verify_witness",
    "PrecisionError",
    "count_maximal_orders_local",
]
