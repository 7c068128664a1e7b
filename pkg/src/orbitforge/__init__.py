"""Nilpotent orbits of orthogonal Lie algebras over F_{2^k}.

Classification, counting and explicit representatives of the nilpotent
O(V)- and SO(V)-orbits in o_N over finite fields of characteristic 2,
with a brute-force orbit-enumeration oracle that verifies every
combinatorial claim on small spaces.
"""

from .counting import check_springer_cardinality, orbit_count, p, p2, weyl_irrep_count
from .gf2 import FieldCtx, field, field_of_order
from .kernels import backend_name
from .oracle import OrbitReport, orbit_partition, reconcile
from .quadform import QuadraticSpace, WittType, standard_space, witt_type
from .rational import (
    RationalOrbitLabel,
    canonicalize,
    enumerate_rational_orbits,
    label_to_pair,
    representative,
    split_orbit,
)
from .symbols import PartitionPair, Symbol, enumerate_symbols, parse_symbol, validate_symbol

__version__ = "0.1.0"

__all__ = [
    "FieldCtx",
    "OrbitReport",
    "PartitionPair",
    "QuadraticSpace",
    "RationalOrbitLabel",
    "Symbol",
    "WittType",
    "backend_name",
    "canonicalize",
    "check_springer_cardinality",
    "enumerate_rational_orbits",
    "enumerate_symbols",
    "field",
    "field_of_order",
    "label_to_pair",
    "orbit_count",
    "orbit_partition",
    "p",
    "p2",
    "parse_symbol",
    "reconcile",
    "representative",
    "split_orbit",
    "standard_space",
    "validate_symbol",
    "weyl_irrep_count",
    "witt_type",
]
