"""Exact oracles: closed forms, rational dynamic programming and enumeration."""

from .dist import RationalDist
from .enumerate import enumerate_exact, enumerate_tagged_heights, tagged_heights_from_summaries
from .everywhere import inf_tree_exact_mean, inf_tree_lower_bound
from .fixed_point import DegreeFixedPoint, FixedPointReport, fixed_point, fixed_point_check
from .moments import exact_moment, exact_size_distribution, float_moment, m_k, moment_polynomial
from .statistic import exact_statistic_distribution, push_forward, tagged_heights

__all__ = [
    "DegreeFixedPoint",
    "FixedPointReport",
    "RationalDist",
    "enumerate_exact",
    "enumerate_tagged_heights",
    "exact_moment",
    "exact_size_distribution",
    "exact_statistic_distribution",
    "fixed_point",
    "fixed_point_check",
    "float_moment",
    "inf_tree_exact_mean",
    "inf_tree_lower_bound",
    "m_k",
    "moment_polynomial",
    "push_forward",
    "tagged_heights",
    "tagged_heights_from_summaries",
]
