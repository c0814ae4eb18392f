"""Exceptions shared across modules."""


class BudgetExceeded(RuntimeError):
    """A guard or work estimate says the request is too expensive."""


class NotUniquelyCompletable(ValueError):
    pass
