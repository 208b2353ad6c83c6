"""Exception hierarchy shared by the library and the CLI."""


class TTMError(Exception):
    """Base class for user-facing errors."""


class InvalidSpecError(TTMError):
    """The data violates a validity condition (CLI exit code 1)."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class UnsupportedError(TTMError):
    """The request falls outside a theorem's hypothesis (CLI exit code 2)."""


class ClosureError(InvalidSpecError):
    """A coboundary leaves the allowed coefficient subgroup of some cell."""

    def __init__(self, cell, degree):
        super().__init__(f"coboundary escapes the allowed subgroup on cell {cell} (q={degree})")
        self.cell = cell
        self.degree = degree


class NonCommutingError(TTMError):
    """An equivalence witness does not commute with the monodromy."""


class PolygonError(InvalidSpecError):
    """A polygon is degenerate: too few facets, unbounded, or empty."""
