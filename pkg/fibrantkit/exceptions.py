"""
Error types for fibrantkit.

Every error raised on purpose by the package derives from FibrantKitError, so
callers (and the theorem suite) can catch one type and record the failure.
"""

from typing import Any, List, Optional


class FibrantKitError(Exception):
    """Base class for all fibrantkit errors."""


class ValidationError(FibrantKitError):
    """
    A category, relative category or fixture failed validation.

    Attributes:
        ids: Offending object or morphism ids named by this violation
        violations: Every violation found in the same validation pass
    """

    def __init__(self, message: str, ids: Optional[List[Any]] = None):
        super().__init__(message)
        self.ids = list(ids or [])
        self.violations: List["ValidationError"] = [self]


class MissingIdentity(ValidationError):
    """An object has no identity, or its identity is not neutral."""


class NonAssociative(ValidationError):
    """A composable triple composes differently depending on bracketing."""


class DanglingComposite(ValidationError):
    """A composition entry is missing, or disagrees with dom/cod."""


class UnknownId(ValidationError):
    """A record references an object or morphism that does not exist."""


class NotARelativeCategory(ValidationError):
    """The weak equivalences are not a wide subcategory (or violate a flag)."""


class UnknownObject(FibrantKitError):
    """An operation was asked about an object outside its category."""


class NotAFunctor(FibrantKitError):
    """An assignment fails to preserve dom, cod, identities or composites."""


class SizeCapExceeded(FibrantKitError):
    """
    A construction would produce more cells than the configured cap.

    Attributes:
        construction: Name of the construction that was refused
        cap: The cap in force
    """

    def __init__(self, construction: str, cap: int):
        super().__init__(f"{construction} exceeds the size cap of {cap}")
        self.construction = construction
        self.cap = cap


class MissingPullback(FibrantKitError):
    """A required pullback does not exist in the finite base."""


class MissingProduct(FibrantKitError):
    """A required chosen product is absent from the structure."""


class MissingPathObject(FibrantKitError):
    """A required path object is absent from the structure."""


class ParseError(FibrantKitError):
    """
    A fixture file is not well-formed.

    Attributes:
        line: 1-based line of the error
        column: 1-based column of the error
    """

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class ClosureError(FibrantKitError):
    """A fixture generator could not close its family within the bounds."""
