"""Exception types.

Everything here is about certification discipline: a computation that cannot
decide something at the carried precision raises instead of guessing.
"""


class PrecisionError(ArithmeticError):
    """Raised when working precision cannot decide the requested result."""


class ValidationError(ValueError):
    """Raised when an input violates a documented hypothesis."""
