"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or inconsistent user-supplied data (files, flags, dimensions)."""


class InternalError(RuntimeError):
    """A structural invariant that the code itself guarantees was violated."""


class BudgetExceededError(RuntimeError):
    """An exhaustive exploration hit its configured node cap."""
