"""Factorization of k-Heun operators into ``(L D + M)(Lbar D + Mbar)``.

Each splitting mask assigns the k+2 finite singularities to ``L`` (bit set)
or ``Lbar``.  For a fixed mask the coefficients of ``M`` (degree deg L - 1)
and ``Mbar`` (degree deg Lbar - 1) solve the k+2 linear equations obtained
by matching ``Q_mid = L Lbar' + L Mbar + M Lbar`` coefficientwise.  The
accessory parameters are then *read off* from ``Q_low = L Mbar' + M Mbar``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from heunfact.errors import (
    ConsistencyFailure,
    DegreeOverflow,
    MaskMismatch,
    NotLame,
    SingularSystem,
)
from heunfact.kernel import ParamPoly, RationalFunction, XPoly, solve_linear_fraction_free
from heunfact.operators import (
    HALF,
    Accessory,
    Factor,
    FamilySpec,
    FuchsOperator,
    HeunParams,
    accessory_decompose,
    adjoint,
    build_heun,
    expand_factors,
    operator_equal,
)

OK = "ok"
SINGULAR = "singular"
TRIVIAL = "trivial-integrable"
NOT_FACTORIZABLE = "not-factorizable"


@dataclass(frozen=True)
class SplittingMask:
    """``bits[i]`` is True when ``(x - s_i)`` belongs to ``L``."""

    bits: tuple[bool, ...]

    @classmethod
    def from_int(cls, value: int, size: int) -> SplittingMask:
        return cls(tuple(bool(value >> i & 1) for i in range(size)))

    @classmethod
    def from_string(cls, text: str) -> SplittingMask:
        if not text or set(text) - {"0", "1"}:
            raise ValueError(f"mask must be a string of 0/1, got {text!r}")
        return cls(tuple(c == "1" for c in text))

    @property
    def size(self) -> int:
        return len(self.bits)

    @property
    def value(self) -> int:
        return sum(1 << i for i, b in enumerate(self.bits) if b)

    @property
    def popcount(self) -> int:
        return sum(self.bits)

    def is_proper(self) -> bool:
        return 0 < self.popcount < self.size

    def complement(self) -> SplittingMask:
        return SplittingMask(tuple(not b for b in self.bits))

    def __str__(self):
        return "".join("1" if b else "0" for b in self.bits)


@dataclass(frozen=True)
class Factorization:
    mask: SplittingMask
    left: Factor
    right: Factor
    alpha_beta: RationalFunction
    rho: tuple[RationalFunction, ...]
    index_pair: tuple[RationalFunction, RationalFunction]
    pinned_operator: FuchsOperator
    family: FamilySpec
    status: str = OK

    @property
    def q_value(self) -> RationalFunction | None:
        return -self.rho[0] if len(self.rho) == 1 else None

    @property
    def L(self) -> XPoly:
        return self.left.l_poly

    @property
    def M(self) -> XPoly:
        return self.left.m_poly

    @property
    def Lbar(self) -> XPoly:
        return self.right.l_poly

    @property
    def Mbar(self) -> XPoly:
        return self.right.m_poly


@dataclass(frozen=True)
class FailedSplitting:
    """Marker for a mask whose linear system was singular or inconsistent."""

    mask: SplittingMask
    status: str
    reason: str


def enumerate_splittings(k: int, include_trivial: bool = False) -> list[SplittingMask]:
    """All masks over k+2 points in ascending integer order (bit 0 = singularity 0)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    n = k + 2
    masks = [SplittingMask.from_int(v, n) for v in range(2 ** n)]
    if include_trivial:
        return masks
    return [m for m in masks if m.is_proper()]


def _clear_row(entries: Sequence[RationalFunction]) -> list[ParamPoly]:
    # multiply a row through by the product of its distinct denominators
    dens: list[ParamPoly] = []
    for e in entries:
        if not e.den.is_constant() and e.den not in dens:
            dens.append(e.den)
    out = []
    for e in entries:
        factor = ParamPoly.one(e.symbols)
        for d in dens:
            if d != e.den:
                factor = factor * d
        if e.den.is_constant():
            out.append(e.num * factor * (1 / e.den.constant_value()))
        else:
            out.append(e.num * factor)
    return out


def _solve_m(family: FamilySpec, L: XPoly, Lb: XPoly, q_mid: XPoly):
    """Solve ``L Mbar + M Lbar = Q_mid - L Lbar'`` for M and Mbar."""
    symbols = family.symbols
    j, jb = L.degree, Lb.degree
    n = j + jb
    rhs_poly = q_mid - L * Lb.derivative()
    rows = []
    for i in range(n):
        # unknowns: M coefficients 0..j-1, then Mbar coefficients 0..jb-1
        row = [Lb.coeff(i - c) for c in range(j)] + [L.coeff(i - c) for c in range(jb)]
        rows.append(_clear_row(row + [rhs_poly.coeff(i)]))
    if rhs_poly.degree >= n:
        raise ConsistencyFailure("Q_mid - L Lbar' exceeds the matched degree range")
    A = [r[:-1] for r in rows]
    b = [r[-1] for r in rows]
    sol = solve_linear_fraction_free(A, b)
    return XPoly(sol[:j], symbols), XPoly(sol[j:], symbols)


def infinity_indices(f: Factorization, family: FamilySpec | None = None):
    """Exponent pair at infinity ``(lead(Mbar), sigma - lead(Mbar))``.

    ``lead(Mbar)`` is the coefficient at the nominal degree ``deg Lbar - 1``
    (the right-factor solution behaves like ``x^-lead(Mbar)``).
    """
    family = family or f.family
    nu_right = f.Mbar.coeff(f.Lbar.degree - 1)
    nu_other = family.sigma - nu_right
    if nu_right * nu_other != f.alpha_beta:
        raise ConsistencyFailure(
            f"index product {nu_right * nu_other} != alpha*beta {f.alpha_beta}")
    return nu_right, nu_other


def solve_splitting(family: FamilySpec, mask: SplittingMask, verify: bool = True) -> Factorization:
    """Factor the k-Heun operator of ``family`` along ``mask``.

    The two extreme masks are accepted too; they come back with status
    ``trivial-integrable`` (or ``not-factorizable`` if their consistency
    condition fails).
    """
    if mask.size != family.k + 2:
        raise ValueError(f"mask {mask} does not have {family.k + 2} entries")
    symbols = family.symbols
    target = build_heun(HeunParams(family.k, family.singularities, family.exponents,
                                   family.allow_coincident))
    left_roots = tuple(s for s, b in zip(family.singularities, mask.bits) if b)
    right_roots = tuple(s for s, b in zip(family.singularities, mask.bits) if not b)
    L = XPoly.from_roots(left_roots, symbols)
    Lb = XPoly.from_roots(right_roots, symbols)
    M, Mb = _solve_m(family, L, Lb, target.q_mid)
    left = Factor(L, M, left_roots)
    right = Factor(Lb, Mb, right_roots)

    q_low = L * Mb.derivative() + M * Mb
    if q_low.degree > family.k:
        raise DegreeOverflow(f"mask {mask}: deg Q_low = {q_low.degree} > k")
    acc = accessory_decompose(q_low, family.k)
    params = HeunParams(family.k, family.singularities, family.exponents,
                        family.allow_coincident, accessory=acc)
    pinned = FuchsOperator(target.q_top, target.q_mid, q_low, params)

    status = OK
    if not mask.is_proper():
        status = TRIVIAL if _trivial_consistent(mask, target, M, Mb, q_low) else NOT_FACTORIZABLE

    f = Factorization(mask, left, right, acc.alpha_beta, acc.rho,
                      (RationalFunction.zero(symbols),) * 2, pinned, family.family(), status)
    f = _with_indices(f)
    if verify and not operator_equal(expand_factors(left, right), pinned):
        raise ConsistencyFailure(f"mask {mask}: expansion does not reproduce the operator")
    return f


def _with_indices(f: Factorization) -> Factorization:
    pair = infinity_indices(f)
    return Factorization(f.mask, f.left, f.right, f.alpha_beta, f.rho, pair,
                         f.pinned_operator, f.family, f.status)


def _trivial_consistent(mask, target, M, Mb, q_low) -> bool:
    if mask.popcount == 0:
        # L = 1, M = 0: integrable case, Mbar = Q_mid - Q_top' and Q_low = Mbar'
        return (M.is_zero() and Mb == target.q_mid - target.q_top.derivative()
                and q_low == Mb.derivative())
    # Lbar = 1, Mbar = 0: H = (Q_top D + Q_mid) D, so Q_low must vanish
    return Mb.is_zero() and M == target.q_mid and q_low.is_zero()


def factorize_all(family: FamilySpec, include_trivial: bool = False):
    """One result per mask in enumeration order; per-mask failures are kept
    as :class:`FailedSplitting` entries instead of aborting."""
    results: list[Factorization | FailedSplitting] = []
    for mask in enumerate_splittings(family.k, include_trivial):
        try:
            results.append(solve_splitting(family, mask))
        except SingularSystem as exc:
            results.append(FailedSplitting(mask, SINGULAR, str(exc)))
    return results


def adjoint_factorization(f: Factorization) -> Factorization:
    """Factorization ``(Lbar D + Mbar*)(L D + M*)`` of the Lagrange adjoint,
    with ``Mbar* = Lbar' - Mbar`` and ``M* = L' - M``.
    """
    new_left = Factor(f.Lbar, f.Lbar.derivative() - f.Mbar, f.right.roots)
    new_right = Factor(f.L, f.L.derivative() - f.M, f.left.roots)
    op = adjoint(f.pinned_operator)
    if not operator_equal(expand_factors(new_left, new_right), op):
        raise ConsistencyFailure(f"mask {f.mask}: adjoint factors do not expand to the adjoint")
    p = op.params
    family = FamilySpec(p.k, p.singularities, p.exponents, p.allow_coincident)
    acc: Accessory = p.accessory
    g = Factorization(f.mask.complement(), new_left, new_right, acc.alpha_beta, acc.rho,
                      (RationalFunction.zero(family.symbols),) * 2, op, family, f.status)
    return _with_indices(g)


def lame_swap_check(f: Factorization, g: Factorization) -> bool:
    """Negate-swap symmetry of Lame factorizations at complementary masks:
    ``g.M == -f.Mbar`` and ``g.Mbar == -f.M``."""
    if g.mask != f.mask.complement():
        raise MaskMismatch(f"masks {f.mask} and {g.mask} are not complementary")
    for h in (f, g):
        if not h.family.is_lame():
            raise NotLame("swap symmetry needs all exponents equal to 1/2")
    return g.M == -f.Mbar and g.Mbar == -f.M


def lame_antisymmetry_holds(f: Factorization) -> bool:
    """``L Mbar + M Lbar == (L' Lbar - L Lbar') / 2`` (Lame families only)."""
    L, Lb = f.L, f.Lbar
    lhs = L * f.Mbar + f.M * Lb
    rhs = (L.derivative() * Lb - L * Lb.derivative()).scale(HALF)
    return lhs == rhs
