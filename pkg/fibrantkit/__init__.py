"""
Finite categories of fibrant objects.

This package builds, on small finite fixtures, the constructions of the
homotopy theory of categories of fibrant objects and checks its statements
mechanically:
- fincat: finite categories, functors, comma categories, fibrations, adjoints
- relcat: relative categories, zigzag categories, right fractions
- simplicial, homotopy: truncated nerves, homotopy colimits, integral homology
- fibrant: fibration structures, cocycles, functional correspondences, hom-sets
- suite: the theorem suite over a fixture, emitted as a Report

Every construction is exact and bounded by the size caps in fibrantkit.config.
"""

from fibrantkit.config import Settings, configure, get_settings
from fibrantkit.exceptions import (
    ClosureError,
    FibrantKitError,
    MissingPathObject,
    MissingProduct,
    MissingPullback,
    NotAFunctor,
    ParseError,
    SizeCapExceeded,
    UnknownId,
    UnknownObject,
    ValidationError,
)
from fibrantkit.fincat import FinCategory, Functor, validate_category
from fibrantkit.models import CheckResult, CheckStatus, Report, Verdict, VerdictStatus
from fibrantkit.relcat import RelCategory, Zigzag, ZigzagType
from fibrantkit.simplicial import SimplicialSet, nerve
from fibrantkit.homotopy import homology, is_weakly_contractible, weak_equivalence_evidence
from fibrantkit.fibrant import CfoStructure, CisinskiStructure, homotopy_hom
from fibrantkit.fixtures import Fixture, generate_fixture, load_fixture
from fibrantkit.suite import TheoremSuite, run_suite

__version__ = "1.0.0"

__all__ = [
    "Settings",
    "configure",
    "get_settings",
    "FibrantKitError",
    "ValidationError",
    "UnknownId",
    "UnknownObject",
    "NotAFunctor",
    "SizeCapExceeded",
    "MissingPullback",
    "MissingProduct",
    "MissingPathObject",
    "ParseError",
    "ClosureError",
    "FinCategory",
    "Functor",
    "validate_category",
    "RelCategory",
    "Zigzag",
    "ZigzagType",
    "SimplicialSet",
    "nerve",
    "homology",
    "is_weakly_contractible",
    "weak_equivalence_evidence",
    "Verdict",
    "VerdictStatus",
    "CheckResult",
    "CheckStatus",
    "Report",
    "CfoStructure",
    "CisinskiStructure",
    "homotopy_hom",
    "Fixture",
    "load_fixture",
    "generate_fixture",
    "TheoremSuite",
    "run_suite",
]
