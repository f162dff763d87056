from typing import Any, Optional


class NonlocError(Exception):
    """Base class for every error raised by the toolkit."""


class ModelTypeError(NonlocError, ValueError):
    """A tuple, label or site index does not fit the model's system type."""


class HeterogeneousAlphabetError(NonlocError, ValueError):
    """The symmetric-group action needs every site to share its alphabets."""


class ModelFormatError(NonlocError, ValueError):
    """A model file could not be parsed."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class NormalizationError(ModelFormatError):
    """Probability weights are negative or do not sum to exactly 1."""


class SizeLimitError(NonlocError):
    """An exponential construction exceeded its configured guard."""

    def __init__(self, what: str, size: int, limit: int):
        self.size = size
        self.limit = limit
        super().__init__(f"{what} has {size} elements, above the limit of {limit}")


class PreconditionError(NonlocError):
    """A construction was called on a model that lacks a required property."""

    def __init__(self, message: str, violation: Any = None):
        self.violation = violation
        super().__init__(message)


class ConflictError(NonlocError, ValueError):
    """Catalog parameters contradict the fixed part of a model."""


class QuantumDimensionError(NonlocError, ValueError):
    """Operator or state shapes do not match the declared dimensions."""


class UnvalidatedRealizationError(NonlocError):
    """The statistical algorithm was asked to run on an invalid realization."""


class ToleranceAmbiguityError(NonlocError):
    """A probability lies too close to the collapse threshold to decide."""


class RationalizationError(NonlocError):
    """A floating-point probability could not be snapped to a rational."""


class CollapseMismatchError(NonlocError):
    """A probabilistic model does not collapse to the expected relation."""


class InternalConsistencyError(NonlocError, AssertionError):
    """Two computations that must agree did not; this is a bug."""
