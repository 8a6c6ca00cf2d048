"""Exception types shared across the package."""


class DiofactError(Exception):
    """Base class for all package-specific errors."""


class BudgetExceededError(DiofactError):
    """A configured resource budget (memory, nodes, factoring work) ran out."""


class FactorBudgetError(BudgetExceededError):
    """Factoring gave up; carries the factored part and the remaining cofactor."""

    def __init__(self, message, partial, cofactor):
        super().__init__(message)
        self.partial = partial      # tuple of (prime, exponent) found so far
        self.cofactor = cofactor    # unfactored part, > 1


class ParseError(DiofactError):
    """Equation DSL rejection; carries the offending position."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class InstabilityError(DiofactError):
    """A truncated set was too short to pin down a generalized factorial."""
