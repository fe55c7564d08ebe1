"""Quotients of parameter polynomials: the coefficient field.

Equality is decided by cross-multiplication, so no multivariate gcd is
needed for correctness.  :meth:`RationalFunction.simplify` only extracts
rational content and tries exact division; that is enough to print every
value this package produces in lowest terms, because the denominators that
arise divide the numerators exactly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from heunfact.errors import DivisionByZero, SymbolTableMismatch
from heunfact.kernel.ppoly import ParamPoly


class RationalFunction:
    __slots__ = ("num", "den")

    def __init__(self, num: ParamPoly, den: ParamPoly | None = None):
        if den is None:
            den = ParamPoly.one(num.symbols)
        if num.symbols != den.symbols:
            raise SymbolTableMismatch(f"{num.symbols} vs {den.symbols}")
        if den.is_zero():
            raise DivisionByZero("rational function with zero denominator")
        # constant denominators are folded into the numerator
        if den.is_constant():
            c = den.constant_value()
            if c != 1:
                num = num * (1 / c)
                den = ParamPoly.one(num.symbols)
        self.num = num
        self.den = den

    @classmethod
    def _unchecked(cls, num: ParamPoly, den: ParamPoly) -> RationalFunction:
        # caller guarantees the invariants (den nonzero, constant den is 1)
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den
        return obj

    @classmethod
    def from_value(cls, value, symbols: Iterable[str]) -> RationalFunction:
        symbols = tuple(symbols)
        if isinstance(value, RationalFunction):
            if value.symbols != symbols:
                raise SymbolTableMismatch(f"{value.symbols} vs {symbols}")
            return value
        if isinstance(value, ParamPoly):
            if value.symbols != symbols:
                raise SymbolTableMismatch(f"{value.symbols} vs {symbols}")
            return cls(value)
        return cls(ParamPoly.constant(Fraction(value), symbols))

    @classmethod
    def zero(cls, symbols: Iterable[str]) -> RationalFunction:
        return cls(ParamPoly.zero(symbols))

    @classmethod
    def one(cls, symbols: Iterable[str]) -> RationalFunction:
        return cls(ParamPoly.one(symbols))

    @classmethod
    def generator(cls, name: str, symbols: Iterable[str]) -> RationalFunction:
        return cls(ParamPoly.generator(name, symbols))

    @property
    def symbols(self) -> tuple[str, ...]:
        return self.num.symbols

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant() or self.simplify().den.is_constant()

    def is_constant(self) -> bool:
        if self.den.is_constant():
            return self.num.is_constant()
        s = self.simplify()
        return s.num.is_constant() and s.den.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        s = self if self.den.is_constant() else self.simplify()
        return s.num.constant_value() / s.den.constant_value()

    def free_symbols(self) -> set[str]:
        return self.num.free_symbols() | self.den.free_symbols()

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            if other.symbols != self.symbols:
                raise SymbolTableMismatch(f"{self.symbols} vs {other.symbols}")
            return other
        if isinstance(other, (int, Fraction, ParamPoly)):
            return RationalFunction.from_value(other, self.symbols)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den.is_one() and other.den.is_one():
            return RationalFunction._unchecked(self.num + other.num, self.den)
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den,
                                self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._unchecked(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalFunction._unchecked(self.num * other, self.den)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den.is_one() and other.den.is_one():
            return RationalFunction._unchecked(self.num * other.num, self.den)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise DivisionByZero(f"division of {self} by zero")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise ValueError("exponent must be an integer")
        if n < 0:
            if self.is_zero():
                raise DivisionByZero("zero raised to a negative power")
            return RationalFunction(self.den ** -n, self.num ** -n)
        return RationalFunction(self.num ** n, self.den ** n)

    # -- equality ----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, ParamPoly, RationalFunction)):
            other = self._coerce(other)
            return self.num * other.den == other.num * self.den
        return NotImplemented

    # cross-multiplication equality has no compatible hash
    __hash__ = None

    # -- normalization -----------------------------------------------------

    def simplify(self) -> RationalFunction:
        """Cosmetic normal form: exact division when possible, integer content
        removed, denominator's leading coefficient positive."""
        num, den = self.num, self.den
        if num.is_zero():
            return RationalFunction(num, ParamPoly.one(self.symbols))
        if not den.is_constant():
            q, r = num.divide(den)
            if r.is_zero():
                num, den = q, ParamPoly.one(self.symbols)
            else:
                q, r = den.divide(num)
                if r.is_zero():
                    num, den = ParamPoly.one(self.symbols), q
        cn, cd = num.content(), den.content()
        num, den = num * (1 / cn), den * (1 / cd)
        ratio = cn / cd
        num, den = num * ratio.numerator, den * ratio.denominator
        if den.leading_term()[1] < 0:
            num, den = -num, -den
        obj = RationalFunction.__new__(RationalFunction)
        obj.num, obj.den = num, den
        return obj

    def substitute(self, values: Mapping[str, RationalFunction]) -> RationalFunction:
        """Replace symbols by rational functions of the same symbol table."""
        one = RationalFunction.one(self.symbols)
        env = {s: values.get(s, RationalFunction.generator(s, self.symbols)) for s in self.symbols}
        return self.num.evaluate(env, one) / self.den.evaluate(env, one)

    def recast(self, symbols: Iterable[str]) -> RationalFunction:
        return RationalFunction(self.num.recast(symbols), self.den.recast(symbols))

    def __float__(self):
        return float(self.constant_value())

    # -- printing ----------------------------------------------------------

    def __str__(self):
        s = self.simplify()
        num_str = str(s.num)
        if s.den == 1:
            return num_str
        den_str = str(s.den)
        if len(s.den) > 1 or not _is_plain_factor(s.den):
            den_str = f"({den_str})"
        if len(s.num) > 1:
            if s.num.leading_term()[1] < 0:
                return f"-({-s.num})/{den_str}"
            return f"({num_str})/{den_str}"
        return f"{num_str}/{den_str}"

    def __repr__(self):
        return f"RationalFunction({str(self)!r}, symbols={self.symbols!r})"


def _is_plain_factor(p: ParamPoly) -> bool:
    # single term whose printed form needs no parentheses after "/"
    mono, c = p.leading_term()
    if not any(mono):
        return True
    return c == 1 and sum(1 for e in mono if e) == 1


def rf_equal(f: RationalFunction, g: RationalFunction) -> bool:
    """True iff ``f.num * g.den == g.num * f.den``."""
    if f.symbols != g.symbols:
        raise SymbolTableMismatch(f"{f.symbols} vs {g.symbols}")
    return f.num * g.den == g.num * f.den


def rf_simplify(f: RationalFunction) -> RationalFunction:
    return f.simplify()


def as_rf(value, symbols: Iterable[str]) -> RationalFunction:
    return RationalFunction.from_value(value, symbols)
