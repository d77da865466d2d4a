"""Sufficient-statistic chains, the doubling skeleton and the continuous-time embedding."""

from .base import Chain
from .continuous import CTState, RRTHeight, ct_advance, ct_run, rrt_height
from .degree import DegreeChain, DegreeChainState, degree_run, degree_step
from .factory import CHAIN_NAMES, get_chain
from .fenwick import FenwickSampler
from .profile import ProfileChain, ProfileChainState, profile_run, profile_step
from .size import SizeChain, SizeChainState, size_run, size_step
from .skeleton import (
    SkeletonState,
    doubling_wait_cdf,
    kappa_of_n,
    kappa_sample,
    size_of_n,
    skeleton_run,
    skeleton_step,
)
from .tagged import TaggedChain, TaggedHeightsState, tagged_run, tagged_step

__all__ = [
    "CHAIN_NAMES",
    "CTState",
    "Chain",
    "DegreeChain",
    "DegreeChainState",
    "FenwickSampler",
    "ProfileChain",
    "ProfileChainState",
    "RRTHeight",
    "SizeChain",
    "SizeChainState",
    "SkeletonState",
    "TaggedChain",
    "TaggedHeightsState",
    "ct_advance",
    "ct_run",
    "degree_run",
    "degree_step",
    "doubling_wait_cdf",
    "get_chain",
    "kappa_of_n",
    "kappa_sample",
    "profile_run",
    "profile_step",
    "rrt_height",
    "size_of_n",
    "size_run",
    "size_step",
    "skeleton_run",
    "skeleton_step",
    "tagged_run",
    "tagged_step",
]
