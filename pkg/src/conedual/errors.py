"""Exception types shared across the package."""


class ConeDualError(Exception):
    """Base class for all package errors."""


class DimensionError(ConeDualError, ValueError):
    """Operands live in spaces of different dimension."""


class PolicyError(ConeDualError):
    """The requested operation is not available for this cone/policy pairing."""


class InvalidInstance(ConeDualError, ValueError):
    """Problem data violates a precondition (e.g. h is zero or not in K1*)."""


class InternalInvariantViolation(ConeDualError, AssertionError):
    """A mathematical invariant that must always hold was observed to fail."""
