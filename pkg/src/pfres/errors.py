"""Exception types shared across the package."""


class PfresError(Exception):
    """Base class for library errors."""


class SizeError(PfresError, ValueError):
    """A size or parity precondition failed."""


class PreconditionError(PfresError, ValueError):
    """Index data violates a stated precondition."""


class IdentityFailure(PfresError, AssertionError):
    """Neither side of an expected identity matches; carries both sides."""

    def __init__(self, message, lhs=None, rhs=None):
        super().__init__(message)
        self.lhs = lhs
        self.rhs = rhs
