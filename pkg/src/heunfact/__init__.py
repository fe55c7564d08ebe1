"""Exact factorization of generalized Heun and Lame operators.

An operator ``Q_top D^2 + Q_mid D + Q_low`` with regular singularities at
0, 1, a_1..a_k and infinity is written as ``(L D + M)(Lbar D + Mbar)`` for
every way of splitting the finite singularities between ``L`` and ``Lbar``.
"""

__version__ = "0.1.0"

from heunfact.factorization import (  # noqa: E402
    Factorization,
    FailedSplitting,
    SplittingMask,
    adjoint_factorization,
    enumerate_splittings,
    factorize_all,
    infinity_indices,
    lame_antisymmetry_holds,
    lame_swap_check,
    solve_splitting,
)
from heunfact.operators import (  # noqa: E402
    Accessory,
    Factor,
    FamilySpec,
    FuchsOperator,
    HeunParams,
    adjoint,
    build_heun,
    build_lame,
    expand_factors,
    make_family,
)

__all__ = [
    "Accessory", "Factor", "Factorization", "FailedSplitting", "FamilySpec", "FuchsOperator",
    "HeunParams", "SplittingMask", "adjoint", "adjoint_factorization", "build_heun",
    "build_lame", "enumerate_splittings", "expand_factors", "factorize_all",
    "infinity_indices", "lame_antisymmetry_holds", "lame_swap_check", "make_family",
    "solve_splitting",
]
