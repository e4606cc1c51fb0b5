"""Exception types raised by validation and construction routines."""

from __future__ import annotations


class ValidationError(ValueError):
    """A value violates one of its declared invariants.

    ``residual`` carries the measured size of the violation where one is
    meaningful (maximum entry deviation, most negative eigenvalue, ...).
    """

    def __init__(self, message: str, residual: float | None = None):
        if residual is not None:
            message = f"{message} (residual {residual:.3e})"
        super().__init__(message)
        self.residual = residual


class NotHermitianError(ValidationError):
    """Matrix is not Hermitian within tolerance."""


class NotUnitTraceError(ValidationError):
    """Matrix trace differs from 1 beyond tolerance."""


class NotPSDError(ValidationError):
    """Matrix has an eigenvalue below the negative tolerance."""


class NotTracePreservingError(ValidationError):
    """Kraus operators do not satisfy the completeness condition."""


class ColumnOverflowError(ValidationError):
    """A diagonal column's squared entries already exceed 1."""

    def __init__(self, column: int, excess: float):
        super().__init__(
            f"column {column} squared entries exceed 1 by {excess:.3e}"
        )
        self.column = column
        self.excess = excess


class SingularComplementError(ValidationError):
    """The complement I - A is too close to singular to invert."""


class SchemaError(ValueError):
    """A parsed document does not match the expected schema.

    ``field`` names the offending location, e.g. ``"kraus[1][0]"``.
    """

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field
