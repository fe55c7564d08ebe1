"""Closed-form solutions attached to a factorization.

The right factor gives ``y1 = prod (x - s)^mu_s`` over the roots of
``Lbar`` with ``mu_s = -Mbar(s)/Lbar'(s)``.  Reduction of order gives
``y2 = y1 * integral(W / y1^2)`` with ``W = prod |x - s|^(-e_s)`` over all
finite singularities; for Lame families this is
``sqrt(Lbar) * integral(dx / (Lbar sqrt(L Lbar)))``.

Numeric evaluation works on real intervals free of singularities and uses
``|x - s|`` in every fractional power.  On such an interval each
``(x - s)^mu`` differs from ``|x - s|^mu`` by a constant factor, so the
real-valued functions still solve the equation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from heunfact.errors import (
    CoincidentSingularities,
    DomainError,
    InvalidTolerance,
    NonZeroResidual,
    QuadratureError,
    SymbolicParameters,
)
from heunfact.factorization import Factorization
from heunfact.kernel import RationalFunction, XPoly

MAX_DEPTH = 40


@dataclass(frozen=True)
class PowerProductSolution:
    """``y = prod (x - s)^mu`` over ``exponents = ((s, mu), ...)``."""

    exponents: tuple[tuple[RationalFunction, RationalFunction], ...]

    @property
    def total_exponent(self) -> RationalFunction:
        total = None
        for _, mu in self.exponents:
            total = mu if total is None else total + mu
        return total

    def log_derivative(self, symbols) -> tuple[XPoly, XPoly]:
        """``y'/y = N/P`` with ``P = prod (x - s)``; returns ``(N, P)``."""
        points = [s for s, _ in self.exponents]
        P = XPoly.from_roots(points, symbols)
        N = XPoly.zero(symbols)
        for i, (_, mu) in enumerate(self.exponents):
            N = N + XPoly.from_roots(points[:i] + points[i + 1:], symbols).scale(mu)
        return N, P


@dataclass(frozen=True)
class QuadratureSolution:
    """``y2(x) = prefactor(x) * integral_{basepoint}^{x} prod |t - s|^p dt``."""

    prefactor: PowerProductSolution
    integrand_description: tuple[tuple[Fraction, Fraction], ...]
    basepoint: float
    domain: tuple[float, float]


def right_solution(f: Factorization) -> PowerProductSolution:
    """Solution of ``Lbar y' + Mbar y = 0`` by residues at the roots of Lbar.

    Raises CoincidentSingularities when Lbar has a repeated root, which can
    only happen for families built with ``allow_coincident``.
    """
    dLb = f.Lbar.derivative()
    pairs = []
    for s in f.right.roots:
        slope = dLb.evaluate(s)
        if slope.is_zero():
            raise CoincidentSingularities(f"{s} is a repeated root of Lbar = {f.Lbar}; "
                                          "the right solution is not a power product")
        pairs.append((s, (-f.Mbar.evaluate(s) / slope).simplify()))
    return PowerProductSolution(tuple(pairs))


def residual_rational(f: Factorization, y: PowerProductSolution, check: bool = True) -> XPoly:
    """Numerator of ``(Q_top y'' + Q_mid y' + Q_low y) / y`` over ``P^2``.

    With ``S = y'/y = N/P`` the residual is
    ``Q_top (N^2 + N'P - N P') + Q_mid N P + Q_low P^2``; it is the zero
    polynomial exactly when ``y`` solves the pinned equation.
    """
    op = f.pinned_operator
    N, P = y.log_derivative(op.symbols)
    R = (op.q_top * (N * N + N.derivative() * P - N * P.derivative())
         + op.q_mid * N * P + op.low() * P * P)
    if check and not R.is_zero():
        raise NonZeroResidual(f"mask {f.mask}: residual {R} is not zero", R)
    return R


# -- numeric evaluation ----------------------------------------------------


def _numeric(v: RationalFunction, what: str) -> Fraction:
    if not v.is_constant():
        raise SymbolicParameters(f"{what} {v} depends on free parameters")
    return v.constant_value()


def _float_poly(p: XPoly) -> list[float]:
    return [float(_numeric(c, "coefficient")) for c in p.coeffs]


def _horner(coeffs: Sequence[float], x: float) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _numeric_exponents(y: PowerProductSolution) -> list[tuple[float, float]]:
    return [(float(_numeric(s, "singularity")), float(_numeric(mu, "exponent")))
            for s, mu in y.exponents]


def _power_product(pairs, x: float) -> float:
    return math.prod(abs(x - s) ** mu for s, mu in pairs)


def _check_point(x: float, points: Sequence[float]):
    for s in points:
        if x == s:
            raise DomainError(f"x = {x} is a singular point")


def ode_residual_numeric(f: Factorization, x_points: Sequence[float], relative: bool = True) -> float:
    """Largest float residual of the right-factor solution over ``x_points``.

    With ``relative`` the residual at each point is divided by
    ``|Q_top y''| + |Q_mid y'| + |Q_low y|``.
    """
    op = f.pinned_operator
    q2, q1, q0 = (_float_poly(p) for p in (op.q_top, op.q_mid, op.low()))
    pairs = _numeric_exponents(right_solution(f))
    sing = [float(_numeric(s, "singularity")) for s in f.family.singularities]
    worst = 0.0
    for x in x_points:
        x = float(x)
        _check_point(x, sing)
        y = _power_product(pairs, x)
        S = sum(mu / (x - s) for s, mu in pairs)
        dS = -sum(mu / (x - s) ** 2 for s, mu in pairs)
        terms = (_horner(q2, x) * y * (S * S + dS), _horner(q1, x) * y * S, _horner(q0, x) * y)
        r = abs(sum(terms))
        if relative:
            scale = sum(abs(t) for t in terms)
            r = r / scale if scale else r
        worst = max(worst, r)
    return worst


def second_solution(f: Factorization, basepoint: float,
                    domain: tuple[float, float]) -> QuadratureSolution:
    """Reduction-of-order second solution for a numeric family."""
    y1 = right_solution(f)
    mu = {i: Fraction(0) for i in range(len(f.family.singularities))}
    right_idx = [i for i, b in enumerate(f.mask.bits) if not b]
    for i, (_, m) in zip(right_idx, y1.exponents):
        mu[i] = _numeric(m, "exponent")
    integrand = []
    for i, (s, e) in enumerate(zip(f.family.singularities, f.family.exponents)):
        p = -_numeric(e, "exponent") - 2 * mu[i]
        if p:
            integrand.append((_numeric(s, "singularity"), p))
    lo, hi = float(domain[0]), float(domain[1])
    if not lo < hi:
        raise DomainError(f"empty domain {domain}")
    for s in f.family.singularities:
        if lo < float(_numeric(s, "singularity")) < hi:
            raise DomainError(f"domain {domain} contains the singularity {s}")
    if not lo < basepoint < hi:
        raise DomainError(f"basepoint {basepoint} outside {domain}")
    return QuadratureSolution(y1, tuple(integrand), float(basepoint), (lo, hi))


def adaptive_simpson(fn: Callable[[float], float], a: float, b: float, tol: float,
                     max_depth: int = MAX_DEPTH) -> float:
    """Adaptive Simpson quadrature with Richardson correction."""
    if tol <= 0:
        raise InvalidTolerance(f"tolerance must be positive, got {tol}")
    if a == b:
        return 0.0
    fa, fm, fb = fn(a), fn((a + b) / 2), fn(b)
    whole = (b - a) / 6 * (fa + 4 * fm + fb)
    return _simpson_step(fn, a, b, fa, fm, fb, whole, tol, max_depth)


def _simpson_step(fn, a, b, fa, fm, fb, whole, tol, depth):
    m = (a + b) / 2
    lm, rm = (a + m) / 2, (m + b) / 2
    flm, frm = fn(lm), fn(rm)
    left = (m - a) / 6 * (fa + 4 * flm + fm)
    right = (b - m) / 6 * (fm + 4 * frm + fb)
    delta = left + right - whole
    if abs(delta) <= 15 * tol:
        return left + right + delta / 15
    if depth <= 0:
        raise QuadratureError(f"no convergence on [{a}, {b}] within {MAX_DEPTH} bisections")
    return (_simpson_step(fn, a, m, fa, flm, fm, left, tol / 2, depth - 1)
            + _simpson_step(fn, m, b, fm, frm, fb, right, tol / 2, depth - 1))


def _integrand_fn(q: QuadratureSolution):
    pairs = [(float(s), float(p)) for s, p in q.integrand_description]
    return lambda t: _power_product(pairs, t)


def _check_inside(q: QuadratureSolution, x0: float):
    lo, hi = q.domain
    if not lo < x0 < hi:
        raise DomainError(f"x0 = {x0} outside the domain {q.domain}")


def second_solution_eval(q: QuadratureSolution, x0: float, tol: float = 1e-10) -> float:
    """Value of ``y2(x0)``; zero at the basepoint."""
    if not tol > 0:
        raise InvalidTolerance(f"tolerance must be positive, got {tol}")
    _check_inside(q, x0)
    integral = adaptive_simpson(_integrand_fn(q), q.basepoint, x0, tol)
    return _power_product(_numeric_exponents(q.prefactor), x0) * integral


def second_solution_residual(f: Factorization, q: QuadratureSolution, x0: float,
                             tol: float = 1e-10, relative: bool = True) -> float:
    """ODE residual of ``y2`` at ``x0`` with derivatives from the Leibniz rule.

    ``y2 = y1 I``, ``y2' = y1' I + y1 w``, ``y2'' = y1'' I + 2 y1' w + y1 w'``
    where ``I`` is the integral and ``w`` the integrand.
    """
    if not tol > 0:
        raise InvalidTolerance(f"tolerance must be positive, got {tol}")
    _check_inside(q, x0)
    op = f.pinned_operator
    q2, q1, q0 = (_float_poly(p) for p in (op.q_top, op.q_mid, op.low()))
    pairs = _numeric_exponents(q.prefactor)
    wpairs = [(float(s), float(p)) for s, p in q.integrand_description]
    I = adaptive_simpson(_integrand_fn(q), q.basepoint, x0, tol)
    y1 = _power_product(pairs, x0)
    S = sum(mu / (x0 - s) for s, mu in pairs)
    dS = -sum(mu / (x0 - s) ** 2 for s, mu in pairs)
    w = _power_product(wpairs, x0)
    dw = w * sum(p / (x0 - s) for s, p in wpairs)
    y = y1 * I
    dy = y1 * S * I + y1 * w
    d2y = y1 * (S * S + dS) * I + 2 * y1 * S * w + y1 * dw
    terms = (_horner(q2, x0) * d2y, _horner(q1, x0) * dy, _horner(q0, x0) * y)
    r = abs(sum(terms))
    if relative:
        scale = sum(abs(t) for t in terms)
        r = r / scale if scale else r
    return r


def lame_degree(alpha_beta: RationalFunction) -> Fraction | None:
    """Degree ``l >= -1/2`` with ``alpha*beta = -l(l+1)/4`` when it is rational.

    This follows the k=1 Lame normalization with numerator
    ``-(l(l+1) x + 4q)/4``; other normalizations rescale alpha*beta.
    """
    ab = _numeric(alpha_beta, "alpha*beta")
    disc = 1 - 16 * ab
    if disc < 0:
        return None
    num, den = disc.numerator, disc.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn != num or rd * rd != den:
        return None
    return (Fraction(rn, rd) - 1) / 2
