"""
Exception hierarchy for the ringcross package.
"""


class RingCrossError(Exception):
    """Base class for every error raised by ringcross."""


class InvalidParameterError(RingCrossError, ValueError):
    """An operation was called with arguments outside its domain."""


class BudgetExhaustedError(RingCrossError, RuntimeError):
    """A GA step was requested after the evaluation budget ran out."""


class MissingCellError(RingCrossError, LookupError):
    """A results grid lacks a (function, operator) cell."""

    def __init__(self, function: str, operator: str):
        self.function = function
        self.operator = operator
        super().__init__(f"Missing cell {function}/{operator} in results grid")
