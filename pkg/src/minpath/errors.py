"""Exception hierarchy shared across the package.

Every domain error carries a stable ``code`` string that the CLI maps to
exit status 1; malformed input (``ParseError``, bad configuration) maps to
exit status 2.
"""
from __future__ import annotations


class MinPathError(Exception):
    """Base class for all domain errors."""

    code = "ERROR"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class ParseError(MinPathError):
    """Malformed instance text (bad JSON, missing fields, bad indices)."""

    code = "PARSE_ERROR"


class InvalidInstanceError(MinPathError):
    """An operation required a valid instance but validation found violations."""

    code = "INVALID_INSTANCE"


class NotPlanarError(MinPathError):
    """An embedding-dependent operation was called without a rotation system."""

    code = "NO_EMBEDDING"


class EulerViolationError(MinPathError):
    """Face traversal of the rotation system does not satisfy V - E + F = 2."""

    code = "EULER_VIOLATION"


class DisconnectedError(MinPathError):
    """No path exists between the requested terminals."""

    code = "DISCONNECTED"


class IterationLimitError(MinPathError):
    """The cutting-plane loop exceeded its cut budget."""

    code = "ITERATION_LIMIT"


class InvalidDeltaError(MinPathError):
    """Decomposition called with a non-positive diameter bound."""

    code = "INVALID_DELTA"


class LimitExceededError(MinPathError):
    """An exact oracle was asked to enumerate beyond its configured limit."""

    code = "LIMIT_EXCEEDED"


class SizeLimitError(MinPathError):
    """A generator was asked for an instance outside its supported range."""

    code = "SIZE_LIMIT"


class EmptyGroupError(MinPathError):
    """Hardness construction produced an empty spine group; retry with a new seed."""

    code = "EMPTY_GROUP"


class InvariantViolationError(MinPathError):
    """A guaranteed property failed at runtime; this always indicates a bug."""

    code = "INVARIANT_VIOLATION"
