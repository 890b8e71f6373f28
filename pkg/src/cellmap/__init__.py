"""Exact-arithmetic toolkit for parahoric Kazhdan-Lusztig maps.

Root data and parahorics, Weyl-group classes and characters, fake
degrees and truncated induction, nilpotent orbits with the Springer
correspondence, a Newton-Puiseux oracle for the classical
Kazhdan-Lusztig maps, and a driver that verifies the parahoric
induction identity at desk scale and emits exceptional-type
predictions from ingested tables.
"""

from .errors import (CellmapError, CorrespondenceGap, DegenerateSample,
                     DeltaMismatch, ExternalTableRequired, FormViolation,
                     GroupTooLarge, InconclusiveSample,
                     InsufficientTruncation, MLSViolation,
                     OrbitLeviMismatch, SpringerNormalizationError,
                     TableError, UnsupportedType, VerificationFailure)
from .rootdata import (Parahoric, RootDatum, build, enumerate_parahorics,
                       root_valuations)
from .weyl import IrrChar, ReflectionSubgroup, WeylGroup, build_weyl
from .invariants import (b_invariant, b_leading_coeff, fake_degree,
                         graded_regular_identity, j_induction)
from .orbits import (d_invariant, is_special, nilpotent_orbits, orbit_dim,
                     orbit_str, spaltenstein_dual, springer,
                     springer_inverse, springer_table, weighted_dynkin)
from .puiseux import kl_map, kl_parahoric
from .driver import (av_map, emit_exceptional, generalized_identity,
                     s_sets_match, strata, verify_thm_kl)
from . import tables

__version__ = "0.1.0"

__all__ = [
    "CellmapError", "CorrespondenceGap", "DegenerateSample",
    "DeltaMismatch", "ExternalTableRequired", "FormViolation",
    "GroupTooLarge", "InconclusiveSample", "InsufficientTruncation",
    "MLSViolation", "OrbitLeviMismatch", "SpringerNormalizationError",
    "TableError", "UnsupportedType", "VerificationFailure",
    "Parahoric", "RootDatum", "build", "enumerate_parahorics",
    "root_valuations",
    "IrrChar", "ReflectionSubgroup", "WeylGroup", "build_weyl",
    "b_invariant", "b_leading_coeff", "fake_degree", "graded_regular_identity", "j_induction",
    "d_invariant", "is_special", "nilpotent_orbits", "orbit_dim",
    "orbit_str", "spaltenstein_dual", "springer", "springer_inverse",
    "springer_table", "weighted_dynkin",
    "kl_map", "kl_parahoric",
    "av_map", "emit_exceptional", "generalized_identity", "s_sets_match",
    "strata", "verify_thm_kl",
    "tables",
]
