"""Continuous-time embedding and the random recursive tree baseline.

Every node carries a rate-1 clock. A ring at the root doubles the tree
(N -> 2N + 1 counting all nodes); a ring elsewhere adds a child. A Yule
process with its own clock supplies the event times: each tree event is one
Yule split, and after a root ring the Yule process runs on alone until it
holds 2Y - 1 individuals. The extra Yule time is the warp increment, and the
coupling ``Y(t + ell_D(t)) = N(t)`` is checked against the separately kept
tree size and clocks after every event.

Event-by-event simulation is used while N stays below ``exact_cap``. Beyond
it each call leaps to the next root ring: non-root growth over the interval is
a Yule increment (negative binomial, or its Gaussian limit once it no longer
fits in 64 bits) and the warp increment is drawn from its Gaussian limit.
"""

import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.special import digamma, polygamma

from ..errors import InvariantViolation
from ..rng import RngStream

logger = logging.getLogger(__name__)

DEFAULT_EXACT_CAP = 20_000

_INT64_SAFE = 1 << 62
_FLOAT_SAFE = 1 << 52

LOG2 = math.log(2.0)


@dataclass
class CTState:
    """Tree size, doublings and warp at time t, plus the subtree of the first root.

    ``Y_check`` and ``Y_time`` are the size and clock of the coupled Yule
    process; they are only ever advanced by Yule splits.
    """

    t: float = 0.0
    N: int = 1
    D: int = 0
    ell: float = 0.0
    Y_check: int = 1
    Y_time: float = 0.0
    S_size: int = 1
    S_depths: Counter = field(default_factory=lambda: Counter({0: 1}))
    S_height: int = 0
    S_frozen: bool = False
    dell: list[float] = field(default_factory=list)

    @property
    def exact(self) -> bool:
        return not self.S_frozen

    def check_coupling(self) -> None:
        if self.Y_check != self.N:
            raise InvariantViolation(f"Yule size {self.Y_check} != tree size {self.N} at t={self.t}")
        if not math.isclose(self.Y_time, self.t + self.ell, rel_tol=1e-9, abs_tol=1e-9):
            raise InvariantViolation(f"Yule time {self.Y_time} != t + ell = {self.t + self.ell}")

    def height_lower_bound(self) -> int:
        """D(t) plus the height of the first root's subtree."""
        return self.D + self.S_height

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "N": self.N,
            "D": self.D,
            "ell": self.ell,
            "S_size": self.S_size,
            "S_height": self.S_height,
            "S_frozen": self.S_frozen,
        }


def _fill_in_gaussian(n_old: int, rng: RngStream) -> float:
    # sum of Exp(j) for j = n_old+1 .. 2 n_old
    if n_old < _FLOAT_SAFE:
        mean = float(digamma(2 * n_old + 1) - digamma(n_old + 1))
        var = float(polygamma(1, n_old + 1) - polygamma(1, 2 * n_old + 1))
    else:
        mean = LOG2 - 1 / (4 * n_old)
        var = 1 / (2 * n_old)
    return mean + np.sqrt(max(var, 0.0)) * rng.normal()


def _yule_growth(count: int, dt: float, rng: RngStream) -> int:
    """Individuals added in time dt by a Yule process started from ``count``."""
    if count == 0 or dt <= 0:
        return 0
    p = float(np.exp(-dt))
    factor = Fraction(1.0 / p - 1.0)
    if count < _INT64_SAFE and count * factor < 2**61:
        return int(rng.generator.negative_binomial(count, p))
    mean = count * factor
    sd = math.isqrt(int(mean / Fraction(p)))
    return max(0, int(mean + sd * Fraction(rng.normal())))


def _yule_fill(state: CTState, rng: RngStream, exact: bool) -> float:
    """Run the Yule process alone from Y to 2Y - 1 individuals; returns the time taken."""
    before = state.Y_check - 1
    if exact:
        rates = np.arange(state.Y_check, 2 * before + 1, dtype=float)
        elapsed = float(rng.generator.exponential(1.0 / rates).sum()) if rates.size else 0.0
    else:
        elapsed = _fill_in_gaussian(before, rng)
    state.Y_check += before
    state.Y_time += elapsed
    return elapsed


def _double(state: CTState, rng: RngStream, exact: bool) -> None:
    n_old = state.N
    state.N = 2 * n_old + 1
    state.D += 1
    dell = _yule_fill(state, rng, exact)
    state.ell += dell
    state.dell.append(dell)


def ct_advance(
    state: CTState,
    rng: RngStream,
    t_max: float = float("inf"),
    exact_cap: int = DEFAULT_EXACT_CAP,
) -> CTState:
    """Process the next event (or leap to the next root ring), in place.

    Time never passes ``t_max``; a step that would cross it stops there.
    """
    if state.N <= exact_cap and not state.S_frozen:
        hold = rng.exponential(state.Y_check)
        if state.t + hold > t_max:
            state.Y_time += t_max - state.t
            state.t = t_max
            return state
        state.Y_check += 1
        state.Y_time += hold
        state.t += hold
        ring = rng.below(state.N)
        if ring == 0:
            _double(state, rng, exact=True)
        else:
            if state.D >= 1 and ring <= state.S_size:
                _grow_subtree(state, rng)
            state.N += 1
        state.check_coupling()
        return state

    if not state.S_frozen:
        logger.debug("continuous-time run leaps from N=%d at t=%.3f", state.N, state.t)
        state.S_frozen = True
    hold = rng.exponential(1.0)
    dt = min(hold, t_max - state.t)
    grown = _yule_growth(state.Y_check - 1, dt, rng)
    state.Y_check += grown
    state.Y_time += dt
    state.N += grown
    state.t += dt
    if hold <= dt:
        state.Y_check += 1
        _double(state, rng, exact=False)
    state.check_coupling()
    return state


def _grow_subtree(state: CTState, rng: RngStream) -> None:
    # uniform member of the subtree by depth multiplicity
    pick = rng.below(state.S_size)
    for depth, count in sorted(state.S_depths.items()):
        if pick < count:
            break
        pick -= count
    state.S_depths[depth + 1] += 1
    state.S_size += 1
    state.S_height = max(state.S_height, depth + 1)


def ct_run(
    rng: RngStream,
    t_max: float | None = None,
    doublings: int | None = None,
    exact_cap: int = DEFAULT_EXACT_CAP,
) -> CTState:
    """Run until time ``t_max`` or until ``doublings`` root rings, whichever comes first."""
    if t_max is None and doublings is None:
        raise ValueError("ct_run needs t_max or doublings")
    horizon = float("inf") if t_max is None else t_max
    target = doublings if doublings is not None else -1
    state = CTState()
    while state.t < horizon and state.D != target:
        ct_advance(state, rng, t_max=horizon, exact_cap=exact_cap)
    return state


@dataclass(frozen=True)
class RRTHeight:
    height: int
    mean_depth: float


def rrt_height(n: int, rng: RngStream) -> RRTHeight:
    """Height and mean depth of a random recursive tree on n nodes.

    Node i picks a uniform parent among nodes 0 .. i-1. Depths are resolved
    block by block over [a, 2a), where parents are either in an earlier block
    or already resolved in the current one.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if n == 1:
        return RRTHeight(0, 0.0)

    gen = rng.generator
    parent = np.empty(n, dtype=np.int64)
    parent[0] = -1
    parent[1:] = gen.integers(0, np.arange(1, n, dtype=np.int64))
    depth = np.zeros(n, dtype=np.int64)
    resolved = np.zeros(n, dtype=bool)
    resolved[0] = True

    a = 1
    while a < n:
        b = min(2 * a, n)
        pending = np.arange(a, b)
        while pending.size:
            par = parent[pending]
            ready = resolved[par]
            done = pending[ready]
            depth[done] = depth[par[ready]] + 1
            resolved[done] = True
            pending = pending[~ready]
        a = b
    return RRTHeight(int(depth.max()), float(depth.mean()))
