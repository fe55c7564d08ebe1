from __future__ import annotations

from fractions import Fraction

import pytest
import sympy

from heunfact.kernel import ParamPoly, RationalFunction, XPoly

_CRITERIA: dict[str, list[str]] = {}


def to_sympy(value, symbols=None):
    """Independent translation of kernel objects into sympy expressions."""
    if isinstance(value, ParamPoly):
        gens = sympy.symbols(value.symbols) if value.symbols else ()
        if len(value.symbols) == 1:
            gens = (gens,)
        expr = sympy.Integer(0)
        for mono, c in value.terms.items():
            term = sympy.Rational(c.numerator, c.denominator)
            for g, e in zip(gens, mono):
                term *= g ** e
            expr += term
        return expr
    if isinstance(value, RationalFunction):
        return to_sympy(value.num) / to_sympy(value.den)
    if isinstance(value, XPoly):
        x = sympy.Symbol("x")
        return sum((to_sympy(c) * x ** i for i, c in enumerate(value.coeffs)), sympy.Integer(0))
    if isinstance(value, (int, Fraction)):
        return sympy.Rational(value.numerator, value.denominator)
    raise TypeError(type(value))


def sympy_equal(a, b) -> bool:
    return sympy.simplify(sympy.expand(a - b)) == 0


@pytest.fixture
def criterion(record_property):
    """Tag an acceptance test so the terminal summary reports it by number."""

    def tag(number: int, text: str):
        record_property("criterion", f"{number}. {text}")

    return tag


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    for name, value in report.user_properties:
        if name == "criterion":
            _CRITERIA.setdefault(value, []).append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_CRITERIA, key=lambda s: int(s.split(".")[0])):
        outcomes = _CRITERIA[label]
        verdict = "PASS" if all(o == "passed" for o in outcomes) else "FAIL"
        terminalreporter.write_line(f"{verdict}  criterion {label}")


def random_family_args(rng, k: int):
    """Distinct rational singularities in [-10, 10] (avoiding 0 and 1) and
    random rational exponents with denominators at most 4."""
    points: list[Fraction] = []
    while len(points) < k:
        v = Fraction(rng.randint(-40, 40), rng.choice([1, 2, 3, 4]))
        if v not in (0, 1) and v not in points:
            points.append(v)
    exps = [Fraction(rng.randint(-12, 12), rng.choice([1, 2, 3, 4])) for _ in range(k + 2)]
    return [str(p) for p in points], [str(e) for e in exps]
