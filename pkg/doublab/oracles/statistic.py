"""Exact laws of chain statistics by forward dynamic programming."""

import logging
from collections import defaultdict
from fractions import Fraction

from ..chains.base import Chain
from ..chains.factory import get_chain
from ..config import get_config
from ..errors import ResourceCapExceeded
from .dist import RationalDist

logger = logging.getLogger(__name__)


def push_forward(chain: Chain, n: int) -> RationalDist:
    """Law of the chain key after n steps from the initial key."""
    current: dict = {chain.initial_key(): Fraction(1)}
    for step in range(n):
        nxt: dict = defaultdict(Fraction)
        for key, weight in current.items():
            for p, succ in chain.kernel(key):
                nxt[succ] += weight * p
        current = nxt
        logger.debug("%s: step %d, support %d", chain.name, step + 1, len(current))
    return RationalDist(current)


def _cap_for(chain: str) -> int:
    caps = get_config().caps
    if chain == "size":
        return caps.size_oracle
    if chain.startswith("tagged"):
        return caps.tagged_oracle
    return caps.statistic_oracle


def exact_statistic_distribution(
    n: int,
    chain: str,
    k: int = 1,
    attach: str = "uniform",
    cap: int | None = None,
) -> RationalDist:
    """Exact law after n steps of a named chain (size, degree, profile, tagged).

    Keys are the chain's canonical keys: B for size, ``(degree_hist,
    root_degree)`` for degree, the height histogram for profile, and
    ``(B or height histogram, heights)`` for tagged chains.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    limit = _cap_for(chain) if cap is None else cap
    if n > limit:
        raise ResourceCapExceeded(f"{chain} oracle n", n, limit)
    return push_forward(get_chain(chain, k=k, attach=attach), n)


def tagged_heights(dist: RationalDist) -> RationalDist:
    """Marginal law of the tag heights from a tagged-chain law."""
    return dist.marginal(lambda key: key[1])
