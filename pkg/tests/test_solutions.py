from __future__ import annotations

import math
from fractions import Fraction

import pytest
from scipy import integrate

from heunfact.errors import (
    DomainError,
    InvalidTolerance,
    NonZeroResidual,
    QuadratureError,
    SymbolicParameters,
)
from heunfact.factorization import SplittingMask, factorize_all, solve_splitting
from heunfact.kernel import parse_coeff
from heunfact.operators import make_family
from heunfact.solutions import (
    PowerProductSolution,
    adaptive_simpson,
    lame_degree,
    ode_residual_numeric,
    residual_rational,
    right_solution,
    second_solution,
    second_solution_eval,
    second_solution_residual,
)

HALF = Fraction(1, 2)


def lame1(a="a"):
    return make_family(1, [a], "lame")


def row6(a="a"):
    return solve_splitting(lame1(a), SplittingMask.from_string("110"))


def test_right_solution_last_lame_row():
    y = right_solution(row6())
    assert len(y.exponents) == 1
    s, mu = y.exponents[0]
    assert s == parse_coeff("a", ("a",)) and mu == HALF
    assert residual_rational(row6(), y).is_zero()


def test_right_solution_k2_first_row_numeric():
    fam = make_family(2, ["2", "3"], "lame")
    f = solve_splitting(fam, SplittingMask.from_string("1100"))
    y = right_solution(f)
    assert [mu for _, mu in y.exponents] == [HALF, HALF]
    assert residual_rational(f, y).is_zero()


def test_general_k1_exponent():
    fam = make_family(1, ["a"], ["gamma", "delta", "eps"])
    f = solve_splitting(fam, SplittingMask.from_string("110"))
    (_, mu), = right_solution(f).exponents
    assert mu == parse_coeff("1 - eps", fam.symbols)


def test_perturbed_exponent_is_detected():
    f = row6()
    (s, mu), = right_solution(f).exponents
    bad = PowerProductSolution(((s, mu + 1),))
    with pytest.raises(NonZeroResidual) as info:
        residual_rational(f, bad)
    assert not info.value.polynomial.is_zero()
    assert not residual_rational(f, bad, check=False).is_zero()


@pytest.mark.parametrize("k", [1, 2, 3])
def test_exponent_sum_and_lame_halves(k):
    fam = make_family(k, ["a", "b", "c"][:k], "lame")
    for f in factorize_all(fam):
        y = right_solution(f)
        assert all(mu == HALF for _, mu in y.exponents)
        assert y.total_exponent == -f.Mbar.coeff(f.Lbar.degree - 1)
        assert y.total_exponent == -f.index_pair[0]


def test_exponent_sum_general_heun():
    fam = make_family(2, ["a", "b"], ["gamma", "delta", "e1", "e2"])
    for f in factorize_all(fam):
        y = right_solution(f)
        assert y.total_exponent == -f.index_pair[0]
        residual_rational(f, y)


# -- numeric ---------------------------------------------------------------


def test_ode_residual_numeric_examples():
    f = row6("2")
    pts = [0.05 * i + 0.025 for i in range(20)]
    assert ode_residual_numeric(f, pts) < 1e-10
    assert ode_residual_numeric(f, []) == 0
    with pytest.raises(DomainError):
        ode_residual_numeric(f, [2.0])
    with pytest.raises(SymbolicParameters):
        ode_residual_numeric(row6(), [0.5])


def test_absolute_residual_is_available():
    f = row6("2")
    assert ode_residual_numeric(f, [0.3, 0.7], relative=False) < 1e-12


def y1_float(x, a=2.0):
    return math.sqrt(abs(x - a))


def integrand_float(x, a=2.0):
    # 1/(Lbar sqrt(L Lbar)) with L = x(x-1), Lbar = x - a, on (1, 2)
    lb = abs(x - a)
    return 1.0 / (lb * math.sqrt(abs(x * (x - 1)) * lb))


def test_second_solution_against_scipy_quad():
    f = row6("2")
    q = second_solution(f, 1.5, (1.0, 2.0))
    for x0 in (1.1, 1.3, 1.7, 1.9):
        ref, _ = integrate.quad(integrand_float, 1.5, x0, epsabs=1e-13, epsrel=1e-13)
        got = second_solution_eval(q, x0, 1e-12)
        assert got == pytest.approx(y1_float(x0) * ref, rel=1e-9)


def test_second_solution_at_basepoint_is_zero():
    q = second_solution(row6("2"), 1.5, (1.0, 2.0))
    assert second_solution_eval(q, 1.5, 1e-10) == 0.0


def test_second_solution_solves_ode_by_finite_differences():
    f = row6("2")
    q = second_solution(f, 1.5, (1.0, 2.0))
    op = f.pinned_operator
    h = 1e-3
    for x0 in (1.2, 1.4, 1.6, 1.8):
        ym, y0, yp = (second_solution_eval(q, x0 + d, 1e-13) for d in (-h, 0.0, h))
        d1 = (yp - ym) / (2 * h)
        d2 = (yp - 2 * y0 + ym) / h ** 2
        terms = [float(op.q_top.evaluate(Fraction(x0))) * d2,
                 float(op.q_mid.evaluate(Fraction(x0))) * d1,
                 float(op.low().evaluate(Fraction(x0))) * y0]
        assert abs(sum(terms)) < 1e-5 * sum(abs(t) for t in terms)


def test_second_solution_leibniz_residual():
    f = row6("2")
    q = second_solution(f, 1.5, (1.0, 2.0))
    for x0 in (1.05, 1.3, 1.5, 1.7, 1.95):
        assert second_solution_residual(f, q, x0) < 1e-6


def test_second_solution_errors():
    f = row6("2")
    q = second_solution(f, 1.5, (1.0, 2.0))
    with pytest.raises(DomainError):
        second_solution_eval(q, 2.5, 1e-8)
    with pytest.raises(InvalidTolerance):
        second_solution_eval(q, 1.6, 0)
    with pytest.raises(DomainError):
        second_solution_eval(q, 1.6, -1.0)
    with pytest.raises(DomainError):
        second_solution(f, 1.5, (0.5, 2.0))
    with pytest.raises(DomainError):
        second_solution(f, 2.5, (1.0, 2.0))
    with pytest.raises(SymbolicParameters):
        second_solution(row6(), 1.5, (1.0, 2.0))


def test_adaptive_simpson_basic_and_failure():
    assert adaptive_simpson(math.sin, 0.0, math.pi, 1e-10) == pytest.approx(2.0, abs=1e-9)
    assert adaptive_simpson(math.exp, 1.0, 1.0, 1e-10) == 0.0
    with pytest.raises(QuadratureError):
        adaptive_simpson(lambda t: 1.0 / t if t else 1e300, -1.0, 2.0, 1e-14, max_depth=5)


def test_lame_degree():
    assert lame_degree(parse_coeff("-1/2", ())) == 1
    assert lame_degree(parse_coeff("-3/2", ())) == 2
    assert lame_degree(parse_coeff("0", ())) == 0
    assert lame_degree(parse_coeff("-1/3", ())) is None
    assert lame_degree(parse_coeff("1", ())) is None


def test_repeated_root_is_not_a_power_product():
    from heunfact.errors import CoincidentSingularities

    fam = make_family(1, ["1"], "lame", allow_coincident=True)
    f = solve_splitting(fam, SplittingMask.from_string("100"))
    with pytest.raises(CoincidentSingularities):
        right_solution(f)
