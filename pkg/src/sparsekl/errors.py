"""Exception hierarchy shared by the library and the CLI exit-code mapping."""


class SparseKLError(Exception):
    """Base class for all errors raised by sparsekl."""


class DomainError(SparseKLError, ValueError):
    """An input is outside the domain of the operation."""


class ResourceCapError(SparseKLError):
    """An instance exceeds a configured enumeration or recursion cap."""


class InvariantViolation(SparseKLError, AssertionError):
    """An internal identity failed; this signals a bug, never bad input."""
