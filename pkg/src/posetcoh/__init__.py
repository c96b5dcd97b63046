"""Exact (co)homology of vector-space-valued functors on finite posets."""

from .arrangements import (Arrangement, IntersectionLattice, arrangement_ordering,
                           braid_arrangement, coordinate_arrangement, dij_formula, dij_table,
                           truncation)
from .derived import (cofibrant_replacement, cohomology, fibrant_replacement, homology,
                      nerve_cohomology_oracle, nerve_homology_oracle)
from .errors import PosetCohError
from .fixtures import get_fixture
from .functor import (CO, CONTRA, Functor, atomic_functor, constant_functor, direct_sum,
                      extension_by_zero_constant)
from .linalg import QQ, Matrix, PrimeField, RationalField
from .mobius import atom_sequence_check, mobius, verify_atomic_cohomology
from .poset import Poset
from .shelling import OrderingFamily, c_set, find_ordering, verify_ordering
from .stability import MackeyFunctor, check_costability, check_stability, predict_vanishing

__all__ = [
    "Arrangement", "CO", "CONTRA", "Functor", "IntersectionLattice", "MackeyFunctor", "Matrix",
    "OrderingFamily", "Poset", "PosetCohError", "PrimeField", "QQ", "RationalField",
    "arrangement_ordering", "atom_sequence_check", "atomic_functor", "braid_arrangement",
    "c_set", "check_costability", "check_stability", "cofibrant_replacement", "cohomology",
    "constant_functor", "coordinate_arrangement", "dij_formula", "dij_table", "direct_sum",
    "extension_by_zero_constant", "fibrant_replacement", "find_ordering", "get_fixture",
    "homology", "mobius", "nerve_cohomology_oracle", "nerve_homology_oracle",
    "predict_vanishing", "truncation", "verify_atomic_cohomology", "verify_ordering",
]
