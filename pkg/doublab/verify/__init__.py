"""Statistical tests and the verification procedures built on them."""

from .procedures import (
    PROCEDURES,
    resolve_tests,
    verify_degree_limit,
    verify_fixed_point,
    verify_height_lb,
    verify_inf_tree,
    verify_kappa_clt,
    verify_moments,
    verify_oracle_equivalence,
    verify_profile,
    verify_reset_times,
    verify_rrt,
    verify_size_oracle,
    verify_skeleton_clt,
    verify_sum_reciprocal,
)
from .report import Check, NormalizedSample, TestReport
from .stats import (
    StatResult,
    chi_square_gof,
    chi_square_two_sample,
    correlation_ci,
    jitter,
    ks_test,
    ks_two_sample,
    mean_ci,
)

__all__ = [
    "PROCEDURES",
    "Check",
    "NormalizedSample",
    "StatResult",
    "TestReport",
    "chi_square_gof",
    "chi_square_two_sample",
    "correlation_ci",
    "jitter",
    "ks_test",
    "ks_two_sample",
    "mean_ci",
    "resolve_tests",
    "verify_degree_limit",
    "verify_fixed_point",
    "verify_height_lb",
    "verify_inf_tree",
    "verify_kappa_clt",
    "verify_moments",
    "verify_oracle_equivalence",
    "verify_profile",
    "verify_reset_times",
    "verify_rrt",
    "verify_size_oracle",
    "verify_skeleton_clt",
    "verify_sum_reciprocal",
]
