from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from heunfact.errors import SingularSystem, SymbolTableMismatch
from heunfact.kernel import ParamPoly, RationalFunction, determinant, parse_coeff, solve_linear_fraction_free
from heunfact.kernel.linsolve import bareiss_eliminate

from conftest import to_sympy

SYMS = ("a", "b")


def P(text):
    rf = parse_coeff(text, SYMS)
    assert rf.is_polynomial()
    return rf.num * (1 / rf.den.constant_value())


def test_symbolic_cramer_2x2():
    A = [[P("a"), P("1")], [P("1"), P("b")]]
    rhs = [P("1"), P("0")]
    x, y = solve_linear_fraction_free(A, rhs)
    assert x == parse_coeff("b/(a*b - 1)", SYMS)
    assert y == parse_coeff("-1/(a*b - 1)", SYMS)


def test_determinant_matches_sympy():
    texts = [["a", "b", "1"], ["1", "a", "b"], ["b", "1", "a + b"]]
    A = [[P(t) for t in row] for row in texts]
    want = sympy.Matrix([[to_sympy(e) for e in row] for row in A]).det()
    assert sympy.expand(to_sympy(determinant(A)) - want) == 0


def test_pivoting_handles_leading_zero():
    A = [[P("0"), P("1")], [P("a"), P("0")]]
    U, swaps = bareiss_eliminate(A, [P("b"), P("1")])
    assert swaps == 1
    assert solve_linear_fraction_free(A, [P("b"), P("1")]) == [
        parse_coeff("1/a", SYMS), parse_coeff("b", SYMS)]
    assert determinant(A) == -P("a")


def test_singular_system():
    A = [[P("a"), P("b")], [P("2*a"), P("2*b")]]
    with pytest.raises(SingularSystem):
        solve_linear_fraction_free(A, [P("1"), P("0")])
    assert determinant(A).is_zero()


def test_shape_and_table_checks():
    with pytest.raises(ValueError):
        solve_linear_fraction_free([[P("1"), P("1")]], [P("1")])
    other = ParamPoly.one(("a",))
    with pytest.raises(SymbolTableMismatch):
        solve_linear_fraction_free([[other]], [P("1")])
    assert solve_linear_fraction_free([], []) == []


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(
    st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=n, max_size=n),
    st.lists(st.integers(-6, 6), min_size=n, max_size=n))))
def test_numeric_systems_match_sympy(data):
    rows, rhs = data
    M = sympy.Matrix(rows)
    A = [[ParamPoly.constant(v, SYMS) for v in row] for row in rows]
    b = [ParamPoly.constant(v, SYMS) for v in rhs]
    if M.det() == 0:
        with pytest.raises(SingularSystem):
            solve_linear_fraction_free(A, b)
        return
    want = M.LUsolve(sympy.Matrix(rhs))
    got = solve_linear_fraction_free(A, b)
    for g, w in zip(got, want):
        assert g.constant_value() == Fraction(int(w.p), int(w.q))


@settings(max_examples=15, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=3, max_size=3))
def test_symbolic_solutions_satisfy_system(ints):
    # shift the diagonal by the symbols so the system stays generic
    a, b = P("a"), P("b")
    A = [[ParamPoly.constant(v, SYMS) for v in row] for row in ints]
    A[0][0] = A[0][0] + a
    A[1][1] = A[1][1] + b
    A[2][2] = A[2][2] + a * b
    rhs = [a, b, ParamPoly.one(SYMS)]
    sol = solve_linear_fraction_free(A, rhs)
    for row, r in zip(A, rhs):
        total = RationalFunction.zero(SYMS)
        for entry, s in zip(row, sol):
            total = total + RationalFunction(entry) * s
        assert total == RationalFunction(r)
    # each reduced denominator divides det A
    det = determinant(A)
    for s in sol:
        assert det.divide(s.simplify().den)[1].is_zero()
