class CoxdefError(Exception):
    """Base class for all errors raised by coxdef."""


class InvalidInputError(CoxdefError, ValueError):
    pass


class InvalidWordError(InvalidInputError):
    pass


class BudgetExceededError(CoxdefError, RuntimeError):
    """A configured resource cap (orbit nodes, elements, cache size) was hit."""


class NotAUnitError(CoxdefError, ArithmeticError):
    pass


class NoRuleError(CoxdefError, ValueError):
    pass
