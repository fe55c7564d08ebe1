"""Exception hierarchy shared by every heunfact module."""

from __future__ import annotations


class HeunFactError(Exception):
    """Base class for all errors raised by heunfact."""


class SymbolTableMismatch(HeunFactError, ValueError):
    pass


class ExpressionSyntaxError(HeunFactError, ValueError):
    """Malformed coefficient expression; carries the 0-based offending position."""

    def __init__(self, message: str, text: str = "", position: int = 0):
        self.text = text
        self.position = position
        self.reason = message
        super().__init__(self._render())

    def _render(self) -> str:
        if not self.text:
            return f"{self.reason} at position {self.position}"
        caret = " " * self.position + "^"
        return f"{self.reason} at position {self.position}\n  {self.text}\n  {caret}"


class UnknownSymbol(ExpressionSyntaxError):
    pass


class DivisionByZero(HeunFactError, ZeroDivisionError):
    pass


class SingularSystem(HeunFactError, ArithmeticError):
    pass


class CoincidentSingularities(HeunFactError, ValueError):
    pass


class MissingAccessory(HeunFactError, ValueError):
    pass


class DegreeOverflow(HeunFactError, ArithmeticError):
    pass


class ConsistencyFailure(HeunFactError, ArithmeticError):
    """An identity that must hold by construction did not; indicates a bug."""


class MaskMismatch(HeunFactError, ValueError):
    pass


class NotLame(HeunFactError, ValueError):
    pass


class NonZeroResidual(HeunFactError, ArithmeticError):
    def __init__(self, message: str, polynomial=None):
        super().__init__(message)
        self.polynomial = polynomial


class DomainError(HeunFactError, ValueError):
    pass


class InvalidTolerance(DomainError):
    pass


class SymbolicParameters(HeunFactError, ValueError):
    pass


class QuadratureError(HeunFactError, ArithmeticError):
    pass


class InvalidProblem(HeunFactError, ValueError):
    """A problem file or result document that cannot be read or interpreted."""
