"""Exact expected size of the double-everywhere tree for small n.

Trees are handled as unordered shapes: a shape is the sorted tuple of its
children's shapes, so ``()`` is a single node.
"""

import math
from collections import defaultdict
from fractions import Fraction
from functools import lru_cache

from ..config import get_config
from ..errors import InvariantViolation, ResourceCapExceeded

Shape = tuple


@lru_cache(maxsize=None)
def shape_size(shape: Shape) -> int:
    return 1 + sum(shape_size(c) for c in shape)


@lru_cache(maxsize=None)
def shape_depth_sum(shape: Shape) -> int:
    """Sum over nodes of their depth."""
    return sum(shape_depth_sum(c) + shape_size(c) for c in shape)


@lru_cache(maxsize=None)
def doublings(shape: Shape) -> tuple[Shape, ...]:
    """Result of doubling at each node, one entry per node."""
    out = [(shape, shape)]
    for i, child in enumerate(shape):
        for replaced in doublings(child):
            out.append(tuple(sorted(shape[:i] + (replaced,) + shape[i + 1 :])))
    return tuple(out)


def _check_mean_depth(shape: Shape) -> None:
    # E[size after a step] = size + 2 + mean depth
    size = shape_size(shape)
    expected = Fraction(sum(shape_size(r) for r in doublings(shape)), size)
    if expected != size + 2 + Fraction(shape_depth_sum(shape), size):
        raise InvariantViolation(f"mean-depth identity fails for shape of size {size}")


def inf_tree_shape_law(n: int, cap: int | None = None, check: bool = True) -> dict[Shape, Fraction]:
    limit = get_config().caps.inf_tree_oracle if cap is None else cap
    if n > limit:
        raise ResourceCapExceeded("double-everywhere oracle n", n, limit)
    law: dict[Shape, Fraction] = {(): Fraction(1)}
    for _ in range(n):
        nxt: dict[Shape, Fraction] = defaultdict(Fraction)
        for shape, weight in law.items():
            if check:
                _check_mean_depth(shape)
            options = doublings(shape)
            share = weight / len(options)
            for r in options:
                nxt[r] += share
        law = nxt
    return law


def inf_tree_exact_mean(n: int, cap: int | None = None) -> Fraction:
    """E[size after n steps], exactly."""
    law = inf_tree_shape_law(n, cap=cap)
    return sum((w * shape_size(s) for s, w in law.items()), Fraction(0))


def inf_tree_lower_bound(n: int) -> float:
    """(n-1)/2 * log2((n-1)/e); zero when n <= 1."""
    if n <= 1:
        return 0.0
    return (n - 1) / 2 * math.log2((n - 1) / math.e)
