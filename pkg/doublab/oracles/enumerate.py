"""Brute-force enumeration over every sequence of uniform node choices."""

import logging
from collections import defaultdict
from fractions import Fraction
from itertools import product

from ..config import get_config
from ..errors import ResourceCapExceeded
from ..trees.arena import TreeState, TreeSummary, summarize
from .dist import RationalDist

logger = logging.getLogger(__name__)


def _trees(n: int) -> list[tuple[Fraction, TreeState]]:
    branches = [(Fraction(1), TreeState())]
    for _ in range(n):
        nxt = []
        for weight, tree in branches:
            share = weight / len(tree)
            for node in range(len(tree)):
                child = tree.copy()
                child.apply(node)
                nxt.append((share, child))
        branches = nxt
    logger.debug("enumerated %d choice sequences at n=%d", len(branches), n)
    return branches


def enumerate_exact(n: int, cap: int | None = None) -> RationalDist:
    """Exact law of the tree summary after n steps."""
    limit = get_config().caps.enumerate if cap is None else cap
    if n > limit:
        raise ResourceCapExceeded("enumeration n", n, limit)
    law: dict[TreeSummary, Fraction] = defaultdict(Fraction)
    for weight, tree in _trees(n):
        law[summarize(tree)] += weight
    return RationalDist(law)


def tagged_heights_from_summaries(summaries: RationalDist, k: int) -> RationalDist:
    """Joint law of the depths of k independent uniform nodes."""
    law: dict[tuple[int, ...], Fraction] = defaultdict(Fraction)
    for summary, weight in summaries.items():
        size = summary.size_B + 1
        hist = summary.height_hist
        for heights in product(range(len(hist)), repeat=k):
            p = weight
            for h in heights:
                p *= Fraction(hist[h], size)
            if p:
                law[heights] += p
    return RationalDist(law)


def enumerate_tagged_heights(n: int, k: int, cap: int | None = None) -> RationalDist:
    return tagged_heights_from_summaries(enumerate_exact(n, cap=cap), k)


# Projections from a tree summary onto each chain's key


def size_key(summary: TreeSummary) -> int:
    return summary.size_B


def degree_key(summary: TreeSummary) -> tuple[tuple[int, ...], int]:
    return summary.degree_key()


def profile_key(summary: TreeSummary) -> tuple[int, ...]:
    return summary.height_hist
