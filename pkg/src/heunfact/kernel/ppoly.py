"""Sparse multivariate polynomials over Q in the free parameter symbols.

A :class:`ParamPoly` maps exponent tuples (one entry per declared symbol, in
declared order) to nonzero :class:`fractions.Fraction` coefficients.  The
representation is canonical, so structural equality is ring equality and
zero testing is exact.

Monomials are ordered graded-lexicographically over the declared symbol
order; printing lists terms in descending order.
"""

from __future__ import annotations

import operator
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping

from heunfact.errors import SymbolTableMismatch

Monomial = tuple[int, ...]
Scalar = int | Fraction


def grlex_key(m: Monomial) -> tuple[int, Monomial]:
    return (sum(m), m)


class ParamPoly:
    __slots__ = ("symbols", "_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None,
                 symbols: Iterable[str] = ()):
        self.symbols = tuple(symbols)
        n = len(self.symbols)
        clean: dict[Monomial, Fraction] = {}
        for mono, coeff in (terms or {}).items():
            mono = tuple(mono)
            if len(mono) != n or any(e < 0 for e in mono):
                raise ValueError(f"bad exponent tuple {mono!r} for symbols {self.symbols}")
            c = Fraction(coeff)
            if c:
                clean[mono] = clean.get(mono, Fraction(0)) + c
                if not clean[mono]:
                    del clean[mono]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, symbols: tuple[str, ...], terms: dict[Monomial, Fraction]) -> ParamPoly:
        # terms must already be free of zero coefficients
        obj = cls.__new__(cls)
        obj.symbols = symbols
        obj._terms = terms
        obj._hash = None
        return obj

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, symbols: Iterable[str]) -> ParamPoly:
        return cls._raw(tuple(symbols), {})

    @classmethod
    def constant(cls, value: Scalar, symbols: Iterable[str]) -> ParamPoly:
        symbols = tuple(symbols)
        value = Fraction(value)
        return cls._raw(symbols, {(0,) * len(symbols): value} if value else {})

    @classmethod
    def one(cls, symbols: Iterable[str]) -> ParamPoly:
        return cls.constant(1, symbols)

    @classmethod
    def generator(cls, name: str, symbols: Iterable[str]) -> ParamPoly:
        symbols = tuple(symbols)
        try:
            i = symbols.index(name)
        except ValueError:
            raise KeyError(f"symbol {name!r} not declared in {symbols}") from None
        mono = tuple(1 if j == i else 0 for j in range(len(symbols)))
        return cls._raw(symbols, {mono: Fraction(1)})

    # -- inspection --------------------------------------------------------

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        """Copy of the term map."""
        return dict(self._terms)

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in descending graded-lex order."""
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        if len(self._terms) != 1:
            return False
        mono, c = next(iter(self._terms.items()))
        return c == 1 and not any(mono)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and not any(next(iter(self._terms))))

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get((0,) * len(self.symbols), Fraction(0))

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self._terms), default=-1)

    def leading_term(self) -> tuple[Monomial, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        mono = max(self._terms, key=grlex_key)
        return mono, self._terms[mono]

    def free_symbols(self) -> set[str]:
        used = set()
        for mono in self._terms:
            used.update(s for s, e in zip(self.symbols, mono) if e)
        return used

    # -- ring operations ---------------------------------------------------

    def _coerce(self, other) -> ParamPoly:
        if isinstance(other, ParamPoly):
            if other.symbols != self.symbols:
                raise SymbolTableMismatch(f"{self.symbols} vs {other.symbols}")
            return other
        if isinstance(other, (int, Fraction)):
            return ParamPoly.constant(other, self.symbols)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for mono, c in other._terms.items():
            v = out.get(mono, 0) + c
            if v:
                out[mono] = v
            else:
                out.pop(mono, None)
        return ParamPoly._raw(self.symbols, out)

    __radd__ = __add__

    def __neg__(self):
        return ParamPoly._raw(self.symbols, {m: -c for m, c in self._terms.items()})

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
            if not other:
                return ParamPoly.zero(self.symbols)
            return ParamPoly._raw(self.symbols, {m: c * other for m, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(other._terms) == 1 and not any(next(iter(other._terms))):
            return self * next(iter(other._terms.values()))
        if len(self._terms) == 1 and not any(next(iter(self._terms))):
            return other * next(iter(self._terms.values()))
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = tuple(map(operator.add, m1, m2))
                out[mono] = out.get(mono, 0) + c1 * c2
        return ParamPoly._raw(self.symbols, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = ParamPoly.one(self.symbols)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c: Scalar) -> ParamPoly:
        return self * Fraction(c)

    def divide(self, divisor: ParamPoly) -> tuple[ParamPoly, ParamPoly]:
        """Multivariate division by a single divisor: ``self = q*divisor + r``.

        No term of ``r`` is divisible by the leading monomial of ``divisor``;
        ``r`` is zero exactly when ``divisor`` divides ``self``.
        """
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lm, lc = divisor.leading_term()
        rest = dict(self._terms)
        quot: dict[Monomial, Fraction] = {}
        rem: dict[Monomial, Fraction] = {}
        while rest:
            mono = max(rest, key=grlex_key)
            c = rest[mono]
            shift = tuple(a - b for a, b in zip(mono, lm))
            if any(s < 0 for s in shift):
                rem[mono] = c
                del rest[mono]
                continue
            f = c / lc
            quot[shift] = quot.get(shift, 0) + f
            for dm, dc in divisor._terms.items():
                t = tuple(a + b for a, b in zip(shift, dm))
                v = rest.get(t, 0) - f * dc
                if v:
                    rest[t] = v
                else:
                    rest.pop(t, None)
        return (ParamPoly._raw(self.symbols, {m: c for m, c in quot.items() if c}),
                ParamPoly._raw(self.symbols, rem))

    def exact_div(self, divisor: ParamPoly) -> ParamPoly:
        q, r = self.divide(divisor)
        if not r.is_zero():
            raise ArithmeticError(f"({divisor}) does not divide ({self})")
        return q

    def content(self) -> Fraction:
        """Positive rational gcd of the coefficients (0 for the zero polynomial)."""
        if not self._terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self._terms.values():
            num = gcd(num, c.numerator)
            den = lcm(den, c.denominator)
        return Fraction(num, den)

    def derivative(self, name: str) -> ParamPoly:
        i = self.symbols.index(name)
        out = {}
        for mono, c in self._terms.items():
            if mono[i]:
                m = list(mono)
                m[i] -= 1
                out[tuple(m)] = c * mono[i]
        return ParamPoly._raw(self.symbols, out)

    def evaluate(self, values: Mapping[str, object], one=None):
        """Substitute ``values[name]`` for every symbol and sum up.

        Values may be any ring elements supporting ``+``, ``*`` and
        multiplication by Fraction; symbols missing from ``values`` raise
        KeyError.  ``one`` is the ring unit used for monomials (defaults to
        Fraction(1), i.e. numeric evaluation).
        """
        unit = Fraction(1) if one is None else one
        total = unit * 0
        powers: dict[tuple[int, int], object] = {}
        for mono, c in self._terms.items():
            term = unit
            for i, e in enumerate(mono):
                if e:
                    key = (i, e)
                    if key not in powers:
                        powers[key] = values[self.symbols[i]] ** e
                    term = term * powers[key]
            total = total + term * c
        return total

    def recast(self, symbols: Iterable[str]) -> ParamPoly:
        """Re-embed into another symbol table; every used symbol must exist there."""
        symbols = tuple(symbols)
        if symbols == self.symbols:
            return self
        idx = {s: i for i, s in enumerate(symbols)}
        out = {}
        for mono, c in self._terms.items():
            m = [0] * len(symbols)
            for s, e in zip(self.symbols, mono):
                if e:
                    if s not in idx:
                        raise SymbolTableMismatch(f"symbol {s!r} missing from {symbols}")
                    m[idx[s]] = e
            out[tuple(m)] = c
        return ParamPoly._raw(symbols, out)

    # -- comparison and printing ------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ParamPoly.constant(other, self.symbols)
        if not isinstance(other, ParamPoly):
            return NotImplemented
        return self.symbols == other.symbols and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.symbols, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"ParamPoly({str(self)!r}, symbols={self.symbols!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for mono, c in self.sorted_terms():
            pieces.append(_format_term(c, _format_monomial(mono, self.symbols)))
        return join_signed(pieces)


def _format_monomial(mono: Monomial, symbols: tuple[str, ...]) -> str:
    parts = []
    for s, e in zip(symbols, mono):
        if e == 1:
            parts.append(s)
        elif e > 1:
            parts.append(f"{s}^{e}")
    return "*".join(parts)


def _format_term(c: Fraction, mono: str) -> str:
    if not mono:
        return str(c)
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    return f"{c}*{mono}"


def join_signed(pieces: list[str]) -> str:
    """Join printed terms with `` + `` / `` - `` according to each term's sign."""
    out = pieces[0]
    for p in pieces[1:]:
        if p.startswith("-"):
            out += " - " + p[1:]
        else:
            out += " + " + p
    return out
