"""Exception types shared across the toolkit."""


class KempeError(Exception):
    """Base class for all toolkit errors."""


class ParameterError(KempeError):
    """A caller-supplied parameter violates a documented constraint."""


class PreconditionError(KempeError):
    """An operation's structural precondition does not hold."""


class BudgetError(KempeError):
    """An enumeration or search exceeded its configured budget."""

    def __init__(self, message: str, bound=None):
        super().__init__(message)
        self.bound = bound
