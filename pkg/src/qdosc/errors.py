"""Exception types shared across the package."""


class QdoscError(Exception):
    """Base class for all package errors."""


class DomainError(QdoscError, ValueError):
    """A parameter is outside the mathematical domain of the operation."""


class ConvergenceError(QdoscError, ValueError):
    """A series cannot converge for the given parameters (radius violated)."""


class DimensionError(QdoscError, ValueError):
    """Incompatible or invalid matrix/state dimensions."""


class TruncationError(QdoscError, ValueError):
    """The requested tail tolerance cannot be met at the given dimension."""


class PhaseUnwrapError(QdoscError, RuntimeError):
    """The time grid is too coarse to unwrap phases unambiguously."""
