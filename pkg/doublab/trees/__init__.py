"""Explicit tree models."""

from .arena import StepEvent, TreeState, TreeSummary, grow, sample_node_heights, summarize
from .everywhere import InfTreeState, canonical_shape, inf_grow, inf_step

__all__ = [
    "InfTreeState",
    "StepEvent",
    "TreeState",
    "TreeSummary",
    "canonical_shape",
    "grow",
    "inf_grow",
    "inf_step",
    "sample_node_heights",
    "summarize",
]
