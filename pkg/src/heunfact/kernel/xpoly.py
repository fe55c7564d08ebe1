"""Dense univariate polynomials in x over the rational-function field."""

from __future__ import annotations

from typing import Iterable, Sequence

from heunfact.errors import DivisionByZero, SymbolTableMismatch
from heunfact.kernel.ppoly import ParamPoly, join_signed
from heunfact.kernel.ratfunc import RationalFunction


class XPoly:
    """Polynomial ``sum(coeffs[i] * x**i)``; trailing zero coefficients are dropped."""

    __slots__ = ("symbols", "coeffs")

    def __init__(self, coeffs: Sequence, symbols: Iterable[str]):
        self.symbols = tuple(symbols)
        cs = [RationalFunction.from_value(c, self.symbols) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, symbols: Iterable[str]) -> XPoly:
        return cls([], symbols)

    @classmethod
    def constant(cls, value, symbols: Iterable[str]) -> XPoly:
        return cls([value], symbols)

    @classmethod
    def x(cls, symbols: Iterable[str]) -> XPoly:
        return cls([0, 1], symbols)

    @classmethod
    def from_roots(cls, roots: Iterable, symbols: Iterable[str]) -> XPoly:
        """Monic product of ``(x - r)`` over ``roots``."""
        symbols = tuple(symbols)
        p = cls.constant(1, symbols)
        for r in roots:
            r = RationalFunction.from_value(r, symbols)
            p = p * cls([-r, 1], symbols)
        return p

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def coeff(self, i: int) -> RationalFunction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return RationalFunction.zero(self.symbols)

    def leading_coefficient(self) -> RationalFunction:
        if not self.coeffs:
            return RationalFunction.zero(self.symbols)
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, XPoly):
            if other.symbols != self.symbols:
                raise SymbolTableMismatch(f"{self.symbols} vs {other.symbols}")
            return other
        if isinstance(other, (RationalFunction, ParamPoly, int)) or hasattr(other, "denominator"):
            return XPoly.constant(other, self.symbols)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return XPoly([self.coeff(i) + other.coeff(i) for i in range(n)], self.symbols)

    __radd__ = __add__

    def __neg__(self):
        return XPoly([-c for c in self.coeffs], self.symbols)

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
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return XPoly.zero(self.symbols)
        out = [RationalFunction.zero(self.symbols)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return XPoly(out, self.symbols)

    __rmul__ = __mul__

    def scale(self, c) -> XPoly:
        c = RationalFunction.from_value(c, self.symbols)
        return XPoly([a * c for a in self.coeffs], self.symbols)

    def __truediv__(self, other):
        """Division by a constant (degree-0) divisor only."""
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise DivisionByZero(f"division of {self} by zero")
        if other.degree != 0:
            raise ValueError(f"cannot divide by the x-polynomial {other}")
        inv = 1 / other.coeffs[0]
        return XPoly([a * inv for a in self.coeffs], self.symbols)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        out = XPoly.constant(1, self.symbols)
        for _ in range(n):
            out = out * self
        return out

    def derivative(self) -> XPoly:
        return XPoly([c * i for i, c in enumerate(self.coeffs)][1:], self.symbols)

    def evaluate(self, v) -> RationalFunction:
        v = RationalFunction.from_value(v, self.symbols)
        acc = RationalFunction.zero(self.symbols)
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    def divide_linear(self, root) -> XPoly:
        """Exact quotient by ``(x - root)``; raises if ``root`` is not a root."""
        root = RationalFunction.from_value(root, self.symbols)
        if self.degree < 1:
            raise ArithmeticError(f"(x - {root}) does not divide {self}")
        # synthetic division from the top coefficient down
        out = [None] * self.degree
        carry = RationalFunction.zero(self.symbols)
        for i in range(self.degree, 0, -1):
            carry = carry * root + self.coeffs[i]
            out[i - 1] = carry
        if not (carry * root + self.coeffs[0]).is_zero():
            raise ArithmeticError(f"(x - {root}) does not divide {self}")
        return XPoly(out, self.symbols)

    def map_coefficients(self, fn) -> XPoly:
        return XPoly([fn(c) for c in self.coeffs], self.symbols)

    def simplify(self) -> XPoly:
        return self.map_coefficients(RationalFunction.simplify)

    def recast(self, symbols: Iterable[str]) -> XPoly:
        symbols = tuple(symbols)
        return XPoly([c.recast(symbols) for c in self.coeffs], symbols)

    def substitute(self, values) -> XPoly:
        return self.map_coefficients(lambda c: c.substitute(values))

    def float_coefficients(self) -> list[float]:
        return [float(c) for c in self.coeffs]

    # -- comparison and printing ------------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(self.coeffs) != len(other.coeffs):
            return False
        return all(a == b for a, b in zip(self.coeffs, other.coeffs))

    __hash__ = None

    def __str__(self):
        if not self.coeffs:
            return "0"
        pieces = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c.is_zero():
                continue
            pieces.append(_format_xterm(c, i))
        return join_signed(pieces)

    def __repr__(self):
        return f"XPoly({str(self)!r}, symbols={self.symbols!r})"


def _format_xterm(c: RationalFunction, i: int) -> str:
    power = "x" if i == 1 else f"x^{i}"
    text = str(c)
    if i == 0:
        return text
    if text == "1":
        return power
    if text == "-1":
        return "-" + power
    s = c.simplify()
    if len(s.num) == 1 or s.den != 1:
        return f"{text}*{power}"
    if s.num.leading_term()[1] < 0:
        return f"-({-s.num})*{power}"
    return f"({text})*{power}"


def xpoly_arith(kind: str, p: XPoly, q) -> XPoly:
    """``kind`` in {"add", "sub", "mul", "scale"}."""
    if kind == "add":
        return p + q
    if kind == "sub":
        return p - q
    if kind == "mul":
        return p * q
    if kind == "scale":
        return p.scale(q)
    raise ValueError(f"unknown operation {kind!r}")


def xpoly_derivative(p: XPoly) -> XPoly:
    return p.derivative()


def xpoly_eval(p: XPoly, v) -> RationalFunction:
    return p.evaluate(v)
