"""Second-order Fuchsian operators ``Q_top D^2 + Q_mid D + Q_low`` with
k+3 regular singularities (0, 1, a_1..a_k, infinity).

``Q_top = x(x-1) prod(x - a_i)``, ``Q_mid = sum_s e_s Q_top/(x - s)`` where
``e_s`` is the exponent parameter attached to singularity ``s``, and
``Q_low = alpha*beta x^k + sum_i rho_i x^(k-i)`` carries the accessory
parameters.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

from heunfact.errors import (
    CoincidentSingularities,
    ConsistencyFailure,
    DegreeOverflow,
    MissingAccessory,
    SymbolTableMismatch,
)
from heunfact.kernel import RationalFunction, XPoly, identifiers, parse_coeff

HALF = Fraction(1, 2)


class Accessory(NamedTuple):
    """Coefficients of ``Q_low``: ``alpha_beta`` at x^k, ``rho[i-1]`` at x^(k-i)."""

    alpha_beta: RationalFunction
    rho: tuple[RationalFunction, ...]

    @property
    def q(self) -> RationalFunction | None:
        # k = 1 convention: numerator written as alpha*beta*x - q
        return -self.rho[0] if len(self.rho) == 1 else None


@dataclass(frozen=True)
class FamilySpec:
    """Singularities ``[0, 1, a_1..a_k]`` and exponents ``[gamma, delta, eps_1..eps_k]``.

    ``allow_coincident`` skips the pairwise-distinct check so degenerate
    configurations can be pushed through the solver on purpose.
    """

    k: int
    singularities: tuple[RationalFunction, ...]
    exponents: tuple[RationalFunction, ...]
    allow_coincident: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "singularities", tuple(self.singularities))
        object.__setattr__(self, "exponents", tuple(self.exponents))
        if not isinstance(self.k, int) or self.k < 1:
            raise ValueError(f"k must be a positive integer, got {self.k!r}")
        n = self.k + 2
        if len(self.singularities) != n or len(self.exponents) != n:
            raise ValueError(f"k={self.k} needs {n} singularities and {n} exponents")
        symbols = self.singularities[0].symbols
        for v in self.singularities + self.exponents:
            if v.symbols != symbols:
                raise SymbolTableMismatch("singularities and exponents must share a symbol table")
        if self.singularities[0] != 0 or self.singularities[1] != 1:
            raise ValueError("the first two singularities must be 0 and 1")
        if not self.allow_coincident:
            for i in range(n):
                for j in range(i + 1, n):
                    if self.singularities[i] == self.singularities[j]:
                        raise CoincidentSingularities(
                            f"singularity {self.singularities[j]} (position {j}) "
                            f"duplicates position {i}")

    @property
    def symbols(self) -> tuple[str, ...]:
        return self.singularities[0].symbols

    @property
    def sigma(self) -> RationalFunction:
        """``gamma + delta + sum(eps) - 1``, i.e. alpha + beta by the Fuchs relation."""
        total = RationalFunction.zero(self.symbols)
        for e in self.exponents:
            total = total + e
        return total - 1

    def is_lame(self) -> bool:
        return all(e == HALF for e in self.exponents)

    def is_numeric(self) -> bool:
        return all(v.is_constant() for v in self.singularities + self.exponents)

    def family(self) -> FamilySpec:
        return FamilySpec(self.k, self.singularities, self.exponents, self.allow_coincident)


@dataclass(frozen=True)
class HeunParams(FamilySpec):
    accessory: Accessory | None = None

    def __post_init__(self):
        super().__post_init__()
        if self.accessory is not None and len(self.accessory.rho) != self.k:
            raise ValueError(f"expected {self.k} accessory parameters rho")


@dataclass(frozen=True)
class FuchsOperator:
    q_top: XPoly
    q_mid: XPoly
    q_low: XPoly | None
    params: HeunParams | None = None

    @property
    def symbols(self) -> tuple[str, ...]:
        return self.q_top.symbols

    def low(self) -> XPoly:
        if self.q_low is None:
            raise MissingAccessory("operator built without accessory parameters")
        return self.q_low


@dataclass(frozen=True)
class Factor:
    """First-order operator ``L D + M`` with monic ``L``.

    ``roots`` lists the linear factors of ``L`` when known.  ``deg M`` is at
    most ``deg L - 1``.
    """

    l_poly: XPoly
    m_poly: XPoly
    roots: tuple[RationalFunction, ...] | None = None

    def __post_init__(self):
        if not self.l_poly.is_monic():
            raise ValueError(f"L = {self.l_poly} is not monic")
        if self.m_poly.degree > self.l_poly.degree - 1:
            raise ValueError(f"deg M = {self.m_poly.degree} exceeds deg L - 1 = "
                             f"{self.l_poly.degree - 1}")
        if self.roots is not None:
            object.__setattr__(self, "roots", tuple(self.roots))
            if len(self.roots) != self.l_poly.degree:
                raise ValueError("root list does not match deg L")

    @classmethod
    def from_roots(cls, roots: Sequence[RationalFunction], m_poly: XPoly) -> Factor:
        return cls(XPoly.from_roots(roots, m_poly.symbols), m_poly, tuple(roots))


# -- construction ---------------------------------------------------------


def make_family(k: int, singularities: Sequence, exponents, symbols: Sequence[str] | None = None,
                allow_coincident: bool = False) -> FamilySpec:
    """Build a FamilySpec from expression strings or numbers.

    ``singularities`` lists either ``a_1..a_k`` or all ``k+2`` points starting
    with 0 and 1.  ``exponents`` is ``"lame"`` or ``k+2`` values.  Without an
    explicit symbol table the names are collected from the inputs in order of
    appearance.
    """
    sing = [str(s) for s in singularities]
    if len(sing) == k:
        sing = ["0", "1"] + sing
    if isinstance(exponents, str):
        if exponents != "lame":
            raise ValueError(f"exponents must be 'lame' or a list, got {exponents!r}")
        exps = ["1/2"] * (k + 2)
    else:
        exps = [str(e) for e in exponents]
    if symbols is None:
        names: list[str] = []
        for text in sing + exps:
            for name in identifiers(text):
                if name not in names:
                    names.append(name)
        symbols = names
    symbols = tuple(symbols)
    if "x" in symbols:
        raise ValueError("'x' is reserved for the independent variable")
    return FamilySpec(k,
                      tuple(parse_coeff(s, symbols) for s in sing),
                      tuple(parse_coeff(e, symbols) for e in exps),
                      allow_coincident)


def build_heun(params: HeunParams) -> FuchsOperator:
    """Polynomial form of the k-Heun operator for ``params``."""
    symbols = params.symbols
    q_top = XPoly.from_roots(params.singularities, symbols)
    q_mid = XPoly.zero(symbols)
    for i, e in enumerate(params.exponents):
        others = params.singularities[:i] + params.singularities[i + 1:]
        q_mid = q_mid + XPoly.from_roots(others, symbols).scale(e)
    q_low = None
    if params.accessory is not None:
        coeffs = [RationalFunction.zero(symbols)] * (params.k + 1)
        coeffs[params.k] = params.accessory.alpha_beta
        for i, r in enumerate(params.accessory.rho, start=1):
            coeffs[params.k - i] = r
        q_low = XPoly(coeffs, symbols)
    return FuchsOperator(q_top, q_mid, q_low, params)


def build_lame(k: int, singularity_values: Sequence, accessory: Sequence | None = None) -> FuchsOperator:
    """k-Lamé operator (all exponents 1/2) for the given ``a_1..a_k``.

    ``accessory`` optionally supplies ``alpha*beta, rho_1..rho_k`` as
    expressions; their names join the symbol table.
    """
    texts = [str(v) for v in singularity_values]
    acc_texts = [str(v) for v in accessory] if accessory is not None else []
    names: list[str] = []
    for text in texts + acc_texts:
        for name in identifiers(text):
            if name not in names:
                names.append(name)
    family = make_family(k, texts, "lame", names)
    acc = None
    if accessory is not None:
        vals = [parse_coeff(t, family.symbols) for t in acc_texts]
        acc = Accessory(vals[0], tuple(vals[1:]))
    op = build_heun(HeunParams(family.k, family.singularities, family.exponents,
                               accessory=acc))
    if op.q_mid != op.q_top.derivative().scale(HALF):
        raise ConsistencyFailure("Lame operator violates Q_mid = Q_top'/2")
    return op


def accessory_decompose(q_low: XPoly, k: int) -> Accessory:
    """Split ``Q_low`` into ``alpha*beta`` (x^k coefficient) and ``rho_1..rho_k``."""
    if q_low.degree > k:
        raise DegreeOverflow(f"deg Q_low = {q_low.degree} exceeds k = {k}")
    return Accessory(q_low.coeff(k), tuple(q_low.coeff(k - i) for i in range(1, k + 1)))


def residue_exponents(q_top: XPoly, q_mid: XPoly, points: Sequence[RationalFunction]):
    """Residues of ``Q_mid/Q_top`` at simple roots of ``Q_top``."""
    dtop = q_top.derivative()
    return tuple(q_mid.evaluate(s) / dtop.evaluate(s) for s in points)


def _params_from(q_top: XPoly, q_mid: XPoly, q_low: XPoly,
                 singularities: Sequence[RationalFunction]) -> HeunParams | None:
    k = len(singularities) - 2
    if k < 1 or q_low.degree > k:
        return None
    try:
        exps = residue_exponents(q_top, q_mid, singularities)
        return HeunParams(k, tuple(singularities), exps, accessory=accessory_decompose(q_low, k))
    except (ValueError, ArithmeticError):
        return None


def expand_factors(left: Factor, right: Factor,
                   singularities: Sequence[RationalFunction] | None = None) -> FuchsOperator:
    """Multiply out ``(L D + M)(Lbar D + Mbar)``.

    Gives ``Q_top = L Lbar``, ``Q_mid = L (Lbar' + Mbar) + M Lbar`` and
    ``Q_low = L Mbar' + M Mbar``.  Parameters are attached when the roots of
    both factors are known (or ``singularities`` fixes their order) and they
    include 0 and 1.
    """
    L, M = left.l_poly, left.m_poly
    Lb, Mb = right.l_poly, right.m_poly
    q_top = L * Lb
    q_mid = L * (Lb.derivative() + Mb) + M * Lb
    q_low = L * Mb.derivative() + M * Mb
    params = None
    if singularities is None and left.roots is not None and right.roots is not None:
        pts = list(left.roots) + list(right.roots)
        ordered = []
        for fixed in (0, 1):
            hit = next((p for p in pts if p == fixed), None)
            if hit is None:
                break
            ordered.append(hit)
            pts.remove(hit)
        else:
            singularities = ordered + pts
    if singularities is not None:
        params = _params_from(q_top, q_mid, q_low, singularities)
    return FuchsOperator(q_top, q_mid, q_low, params)


def operator_equal(h1: FuchsOperator, h2: FuchsOperator) -> bool:
    return h1.q_top == h2.q_top and h1.q_mid == h2.q_mid and h1.low() == h2.low()


def adjoint(h: FuchsOperator) -> FuchsOperator:
    """Lagrange adjoint: ``Q_top* = Q_top``, ``Q_mid* = 2 Q_top' - Q_mid``,
    ``Q_low* = Q_top'' - Q_mid' + Q_low``.

    Exponent parameters map to ``2 - e_s``; this is re-derived from the
    residues of the new ``Q_mid`` and checked.
    """
    dtop = h.q_top.derivative()
    q_mid = dtop.scale(2) - h.q_mid
    q_low = dtop.derivative() - h.q_mid.derivative() + h.low()
    params = None
    if h.params is not None:
        p = h.params
        exps = residue_exponents(h.q_top, q_mid, p.singularities)
        if any(e != 2 - old for e, old in zip(exps, p.exponents)):
            raise ConsistencyFailure("adjoint exponents differ from 2 - e")
        params = HeunParams(p.k, p.singularities, exps, p.allow_coincident,
                            accessory=accessory_decompose(q_low, p.k))
    return FuchsOperator(h.q_top, q_mid, q_low, params)
