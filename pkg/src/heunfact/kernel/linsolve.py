"""Fraction-free (Bareiss) solution of square linear systems over Q[params]."""

from __future__ import annotations

from typing import Sequence

from heunfact.errors import SingularSystem, SymbolTableMismatch
from heunfact.kernel.ppoly import ParamPoly
from heunfact.kernel.ratfunc import RationalFunction


def bareiss_eliminate(A: Sequence[Sequence[ParamPoly]], rhs: Sequence[ParamPoly]):
    """Bring ``[A | rhs]`` to upper-triangular form by one-step fraction-free
    elimination with first-nonzero pivoting.

    Returns ``(U, swaps)`` where ``U`` is the augmented triangular matrix
    (every entry a ParamPoly; ``U[i][i]`` is the i-th leading principal minor
    of the row-permuted matrix) and ``swaps`` counts row exchanges.
    """
    n = len(A)
    if any(len(row) != n for row in A) or len(rhs) != n:
        raise ValueError("system must be square with one right-hand side per row")
    symbols = rhs[0].symbols if n else ()
    for row in A:
        for entry in row:
            if entry.symbols != symbols:
                raise SymbolTableMismatch(f"{entry.symbols} vs {symbols}")
    if any(b.symbols != symbols for b in rhs):
        raise SymbolTableMismatch("right-hand side symbol tables differ")

    M = [list(row) + [b] for row, b in zip(A, rhs)]
    prev = ParamPoly.one(symbols)
    swaps = 0
    for k in range(n):
        pivot = next((i for i in range(k, n) if not M[i][k].is_zero()), None)
        if pivot is None:
            raise SingularSystem(f"determinant vanishes (no pivot in column {k})")
        if pivot != k:
            M[k], M[pivot] = M[pivot], M[k]
            swaps += 1
        pk = M[k][k]
        for i in range(k + 1, n):
            mik = M[i][k]
            for j in range(k + 1, n + 1):
                M[i][j] = (pk * M[i][j] - mik * M[k][j]).exact_div(prev)
            M[i][k] = ParamPoly.zero(symbols)
        prev = pk
    return M, swaps


def determinant(A: Sequence[Sequence[ParamPoly]]) -> ParamPoly:
    n = len(A)
    if n == 0:
        raise ValueError("empty matrix")
    zero = ParamPoly.zero(A[0][0].symbols)
    try:
        U, swaps = bareiss_eliminate(A, [zero] * n)
    except SingularSystem:
        return zero
    det = U[n - 1][n - 1]
    return -det if swaps % 2 else det


def solve_linear_fraction_free(A: Sequence[Sequence[ParamPoly]],
                               rhs: Sequence[ParamPoly]) -> list[RationalFunction]:
    """Unique solution of ``A u = rhs`` with every intermediate a ParamPoly.

    After elimination, ``D = U[n-1][n-1]`` is (up to sign) ``det A`` and the
    Cramer numerators ``N_i = D * u_i`` are recovered by exact divisions
    during back substitution.  Each returned entry is ``N_i / D`` simplified.
    """
    n = len(A)
    if n == 0:
        return []
    U, _ = bareiss_eliminate(A, rhs)
    D = U[n - 1][n - 1]
    numerators: list[ParamPoly | None] = [None] * n
    for i in range(n - 1, -1, -1):
        acc = D * U[i][n]
        for j in range(i + 1, n):
            acc = acc - U[i][j] * numerators[j]
        numerators[i] = acc.exact_div(U[i][i])
    return [RationalFunction(N, D).simplify() for N in numerators]
