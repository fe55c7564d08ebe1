"""Parser for coefficient expressions.

Grammar (whitespace is insignificant)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := "-" unary | power
    power  := atom ("^" INTEGER)?
    atom   := INTEGER | NAME | "(" expr ")"

Implicit multiplication ("2a") is rejected.  Parsing yields a small tuple
AST that :func:`evaluate` folds over any ring supplied through ``env``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from heunfact.errors import DivisionByZero, ExpressionSyntaxError, UnknownSymbol
from heunfact.kernel.ratfunc import RationalFunction

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def tokenize(text: str) -> list[tuple[str, str, int]]:
    """Return ``(kind, value, position)`` triples ending with an ``end`` token."""
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.group(0).strip() == "":
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ExpressionSyntaxError(f"unexpected character {ch!r}", text, start)
            tokens.append(("op", ch, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


def identifiers(text: str) -> list[str]:
    """Distinct names in order of first appearance."""
    seen: list[str] = []
    for kind, value, _ in tokenize(text):
        if kind == "name" and value not in seen:
            seen.append(value)
    return seen


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        return ExpressionSyntaxError(message, self.text, tok[2])

    def parse(self):
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        node = self.expr()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected token {self.peek()[1]!r}")
        return node

    def expr(self):
        node = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            node = ("add" if op == "+" else "sub", node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            tok = self.take()
            rhs = self.unary()
            node = ("mul", node, rhs) if tok[1] == "*" else ("div", node, rhs, tok[2])
        return node

    def unary(self):
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return ("neg", self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            tok = self.peek()
            if tok[0] != "int":
                raise self.error("exponent must be a non-negative integer literal")
            self.take()
            return ("pow", base, int(tok[1]))
        return base

    def atom(self):
        tok = self.take()
        kind, value, pos = tok
        if kind == "int":
            return ("num", Fraction(int(value)))
        if kind == "name":
            return ("sym", value, pos)
        if (kind, value) == ("op", "("):
            node = self.expr()
            if self.peek()[:2] != ("op", ")"):
                raise self.error("expected ')'")
            self.take()
            return node
        if kind == "end":
            raise self.error("unexpected end of expression", tok)
        raise self.error(f"unexpected token {value!r}", tok)


def parse(text: str):
    """Parse ``text`` into an AST (raises ExpressionSyntaxError)."""
    return _Parser(text).parse()


def evaluate(node, env: Mapping[str, object], const: Callable[[Fraction], object],
             text: str = ""):
    """Fold an AST; ``env`` maps names to ring values, ``const`` lifts rationals."""
    kind = node[0]
    if kind == "num":
        return const(node[1])
    if kind == "sym":
        if node[1] not in env:
            raise UnknownSymbol(f"undeclared symbol {node[1]!r}", text, node[2])
        return env[node[1]]
    if kind == "neg":
        return -evaluate(node[1], env, const, text)
    if kind == "pow":
        return evaluate(node[1], env, const, text) ** node[2]
    lhs = evaluate(node[1], env, const, text)
    rhs = evaluate(node[2], env, const, text)
    if kind == "add":
        return lhs + rhs
    if kind == "sub":
        return lhs - rhs
    if kind == "mul":
        return lhs * rhs
    if kind == "div":
        try:
            return lhs / rhs
        except ZeroDivisionError:
            raise DivisionByZero(f"division by zero at position {node[3]} in {text!r}") from None
    raise AssertionError(f"unknown node {kind}")


def parse_coeff(text: str, symbols: Iterable[str]) -> RationalFunction:
    """Parse ``text`` into an exact RationalFunction over ``symbols``."""
    symbols = tuple(symbols)
    env = {s: RationalFunction.generator(s, symbols) for s in symbols}
    return evaluate(parse(text), env, lambda c: RationalFunction.from_value(c, symbols), text)


def parse_xpoly(text: str, symbols: Iterable[str], var: str = "x"):
    """Parse a polynomial in ``var`` whose coefficients live over ``symbols``.

    Extra names may be bound through :func:`parse_xpoly_env`.
    """
    return parse_xpoly_env(text, symbols, {}, var)


def parse_xpoly_env(text: str, symbols: Iterable[str], extra: Mapping[str, object],
                    var: str = "x"):
    from heunfact.kernel.xpoly import XPoly

    symbols = tuple(symbols)
    if var in symbols:
        raise ValueError(f"{var!r} is reserved for the independent variable")
    env: dict[str, object] = {s: XPoly.constant(RationalFunction.generator(s, symbols), symbols)
                              for s in symbols}
    for name, value in extra.items():
        env[name] = value if isinstance(value, XPoly) else XPoly.constant(value, symbols)
    env[var] = XPoly.x(symbols)
    try:
        return evaluate(parse(text), env, lambda c: XPoly.constant(c, symbols), text)
    except ValueError as exc:
        if isinstance(exc, ExpressionSyntaxError):
            raise
        raise ExpressionSyntaxError(str(exc), text, 0) from None
