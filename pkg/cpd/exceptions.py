"""
Custom exceptions for cpd.

Every error carries a human-readable message plus a ``details`` dict with the
numbers needed to reproduce it, so callers (and the CLI) can report the
offending entry without parsing strings.
"""

from typing import Any


class CPDError(Exception):
    """Base exception for all cpd errors."""

    def __init__(
        self,
        message: str,
        details: dict[str, Any] | None = None,
    ) -> None:
        self.message = message
        self.details = details or {}
        super().__init__(message)


class GraphSpecError(CPDError):
    """
    Raised when a graph spec is malformed or violates its invariants.

    Attributes:
        field: Name of the offending spec field (e.g. 'edges', 'potential')
    """

    def __init__(
        self,
        message: str,
        field: str | None = None,
        details: dict[str, Any] | None = None,
    ) -> None:
        super().__init__(message, details)
        self.field = field


class DimensionMismatchError(CPDError):
    """
    Raised when a point, offset or fiber coordinate has the wrong length.

    Attributes:
        expected: Expected dimension d
        actual: Length that was supplied
    """

    def __init__(self, message: str, expected: int, actual: int) -> None:
        super().__init__(message, {"expected": expected, "actual": actual})
        self.expected = expected
        self.actual = actual


class InsufficientResolutionError(CPDError):
    """
    Raised when a node count or truncation radius is below its precondition.

    Attributes:
        required: Minimal admissible value
        given: Value that was supplied
    """

    def __init__(self, message: str, required: int, given: int) -> None:
        super().__init__(message, {"required": required, "given": given})
        self.required = required
        self.given = given


class NumericalError(CPDError):
    """Raised when an input is numerically invalid (e.g. a non-symmetric matrix)."""

    pass


class ConvergenceError(NumericalError):
    """
    Raised when an iterative method does not reach its tolerance.

    Attributes:
        iterations: Iterations (sweeps, polynomial degree) spent
    """

    def __init__(
        self,
        message: str,
        iterations: int,
        details: dict[str, Any] | None = None,
    ) -> None:
        super().__init__(message, {"iterations": iterations, **(details or {})})
        self.iterations = iterations


class BoxTooLargeError(CPDError):
    """Raised when a truncated lattice box exceeds the configured size cap."""

    def __init__(self, size: int, limit: int) -> None:
        super().__init__(
            f"Truncated box has {size} vertices, above the limit of {limit}",
            {"size": size, "limit": limit},
        )
        self.size = size
        self.limit = limit


class BoundViolationError(CPDError):
    """
    Raised when a proven bound fails numerically.

    Attributes:
        t: Time (or Bessel argument) where the bound failed
        value: Measured quantity
        bound: Bound it was checked against
        nu: Offending order/offset, if any
    """

    def __init__(
        self,
        message: str,
        t: float,
        value: float,
        bound: float,
        nu: int | tuple[int, ...] | None = None,
    ) -> None:
        super().__init__(
            message, {"t": t, "value": value, "bound": bound, "nu": nu}
        )
        self.t = t
        self.value = value
        self.bound = bound
        self.nu = nu


class InsufficientDataError(CPDError):
    """Raised when a fit has too few points."""

    def __init__(self, message: str, required: int, available: int) -> None:
        super().__init__(message, {"required": required, "available": available})
        self.required = required
        self.available = available
