class DomainError(ValueError):
    """Raised when inputs are well-formed but outside what an operation supports."""


class InvariantViolation(AssertionError):
    """An internal consistency check failed (a bug, not bad input)."""
