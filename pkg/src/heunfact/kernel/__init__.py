"""Exact arithmetic kernel: parameter polynomials, rational functions,
x-polynomials, fraction-free linear solving and expression parsing."""

from heunfact.kernel.expr import identifiers, parse_coeff, parse_xpoly, parse_xpoly_env
from heunfact.kernel.linsolve import determinant, solve_linear_fraction_free
from heunfact.kernel.ppoly import ParamPoly
from heunfact.kernel.ratfunc import RationalFunction, rf_equal, rf_simplify
from heunfact.kernel.xpoly import XPoly, xpoly_arith, xpoly_derivative, xpoly_eval


def ppoly_arith(kind: str, p: ParamPoly, q: ParamPoly) -> ParamPoly:
    """``kind`` in {"add", "sub", "mul"}."""
    if kind == "add":
        return p + q
    if kind == "sub":
        return p - q
    if kind == "mul":
        return p * q
    raise ValueError(f"unknown operation {kind!r}")


__all__ = [
    "ParamPoly", "RationalFunction", "XPoly",
    "determinant", "identifiers", "parse_coeff", "parse_xpoly", "parse_xpoly_env",
    "ppoly_arith", "rf_equal", "rf_simplify", "solve_linear_fraction_free",
    "xpoly_arith", "xpoly_derivative", "xpoly_eval",
]
