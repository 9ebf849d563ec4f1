"""Exact and asymptotic toolkit for u-parking functions."""

from .abel import AbelSpec, abel_multinomial, abel_special
from .asymptotics import (
    BorelLaw,
    Regime,
    RegimeError,
    asym_boundary,
    asym_displacement,
    asym_mixed_moment,
    asym_moments_c0,
    asym_var_cov,
    borel_pmf,
    borel_tail,
    constrained_power_sum,
    tree_function,
)
from .core import (
    ABParams,
    BudgetExceededError,
    InternalInvariantError,
    ParkingOutcome,
    UVector,
    check_u_parking,
    displacement,
    enumerate_pf,
    park,
)
from .counting import (
    CoordinateDistribution,
    count_pf_composition,
    count_prescribed,
    count_run_prescribed,
    exact_joint_moment,
    exact_moment,
    first_coord_distribution,
    prescribed_pair_count,
)
from .goncarov import abel_goncarov, count_pf, count_pf_ab, goncarov_coefficients, goncarov_eval
from .multishuffle import (
    DecompositionError,
    ShuffleDecomposition,
    compose,
    decompose,
    is_multishuffle,
    maximal_v,
)
from .sampler import MonteCarloStats, SamplerState, derive_seed, estimate_statistics

__version__ = "0.1.0"

__all__ = [
    "ABParams",
    "AbelSpec",
    "BorelLaw",
    "BudgetExceededError",
    "CoordinateDistribution",
    "DecompositionError",
    "InternalInvariantError",
    "MonteCarloStats",
    "ParkingOutcome",
    "Regime",
    "RegimeError",
    "SamplerState",
    "ShuffleDecomposition",
    "UVector",
    "abel_goncarov",
    "abel_multinomial",
    "abel_special",
    "asym_boundary",
    "asym_displacement",
    "asym_mixed_moment",
    "asym_moments_c0",
    "asym_var_cov",
    "borel_pmf",
    "borel_tail",
    "check_u_parking",
    "compose",
    "constrained_power_sum",
    "count_pf",
    "count_pf_ab",
    "count_pf_composition",
    "count_prescribed",
    "count_run_prescribed",
    "decompose",
    "derive_seed",
    "displacement",
    "enumerate_pf",
    "estimate_statistics",
    "exact_joint_moment",
    "exact_moment",
    "first_coord_distribution",
    "goncarov_coefficients",
    "goncarov_eval",
    "is_multishuffle",
    "maximal_v",
    "park",
    "prescribed_pair_count",
    "tree_function",
]
