"""Exception hierarchy shared by every module.

The CLI maps `DomainError` to exit status 1 and `BudgetError` to exit status 2.
"""


class LurothError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(LurothError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class DivergenceError(DomainError):
    """The requested series does not converge."""


class BudgetError(LurothError, RuntimeError):
    """An enumeration, iteration or precision budget was exhausted."""
