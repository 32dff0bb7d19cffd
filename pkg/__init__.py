"""
Finite categories of fibrant objects.

Provides exact constructions on finite fixtures and a theorem suite:
- fincat / relcat: categories, functors, relative categories, zigzags
- simplicial / homotopy: truncated nerves, homotopy colimits, homology
- fibrant: fibration structures, cocycles, homotopy hom-sets
"""

from fibrantkit import (
    CfoStructure,
    FibrantKitError,
    FinCategory,
    Report,
    TheoremSuite,
    load_fixture,
    run_suite,
)

__version__ = "1.0.0"

__all__ = [
    "CfoStructure",
    "FibrantKitError",
    "FinCategory",
    "Report",
    "TheoremSuite",
    "load_fixture",
    "run_suite",
]
