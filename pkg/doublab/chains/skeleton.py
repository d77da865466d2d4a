"""Doubling-time skeleton.

``s_k`` is the step of the k-th doubling and ``C_k`` the non-root count right
after it. Given ``C_k`` the wait to the next doubling is
``ceil(U C / (1 - U))`` for a fresh uniform U, and then ``C`` becomes
``2 (C + wait)``. With ``U = u / 2^64`` the ceiling is computed in integers.
"""

import logging
import math
from bisect import bisect_right
from dataclasses import dataclass, field

import numpy as np

from ..errors import InvariantViolation, TrajectoryTooShort
from ..rng import TWO_64, RngStream

logger = logging.getLogger(__name__)

LOG2 = math.log(2.0)
LOG_TWO_64 = 64 * LOG2

DEFAULT_LOG_SWITCH = 300


@dataclass
class SkeletonState:
    """Skeleton position; exact integers until ``log_mode``, then logs only."""

    k: int = 1
    s: int | None = 1
    C: int | None = 2
    log_mode: bool = False
    log_s: float = 0.0
    log_C: float = LOG2
    log_prod: float = 0.0  # sum of -log(1 - U_i), i >= 2
    path: list[int] | None = field(default=None, repr=False)

    def sandwich(self) -> tuple[float, float]:
        """Log-domain bounds on C_k: k log 2 + log_prod and one more log 2."""
        lower = self.k * LOG2 + self.log_prod
        return lower, lower + LOG2

    def check_sandwich(self, rtol: float = 1e-6) -> None:
        lower, upper = self.sandwich()
        if not (lower - rtol * abs(lower) <= self.log_C <= upper + rtol * abs(upper)):
            raise InvariantViolation(
                f"log C_{self.k} = {self.log_C} outside [{lower}, {upper}]"
            )


def skeleton_step(
    state: SkeletonState, rng: RngStream, log_switch: int = DEFAULT_LOG_SWITCH
) -> SkeletonState:
    """Advance to the next doubling, in place."""
    u = rng.dyadic()
    log_one_minus_u = math.log(TWO_64 - u) - LOG_TWO_64
    state.log_prod -= log_one_minus_u

    if not state.log_mode:
        wait = -((-u * state.C) // (TWO_64 - u))
        state.s += wait
        state.C = 2 * (state.C + wait)
        state.k += 1
        state.log_s = math.log(state.s)
        state.log_C = math.log(state.C)
        if state.path is not None:
            state.path.append(state.s)
        if state.k >= log_switch:
            logger.debug("skeleton switching to log domain at k=%d", state.k)
            state.log_mode = True
            state.s = None
            state.C = None
        return state

    log_wait = math.log(u) - LOG_TWO_64 + state.log_C - log_one_minus_u
    state.log_s = float(np.logaddexp(state.log_s, log_wait))
    state.log_C = LOG2 + state.log_C - log_one_minus_u
    state.k += 1
    return state


def skeleton_run(
    k: int,
    rng: RngStream,
    log_switch: int = DEFAULT_LOG_SWITCH,
    keep_path: bool = False,
    check_sandwich: bool = False,
    rtol: float = 1e-6,
) -> SkeletonState:
    """Skeleton at its k-th doubling."""
    state = SkeletonState(path=[1] if keep_path else None)
    while state.k < k:
        skeleton_step(state, rng, log_switch)
        if check_sandwich:
            state.check_sandwich(rtol)
    return state


def skeleton_path_past(n: int, rng: RngStream) -> list[int]:
    """Exact doubling times s_1, s_2, ... up to the first one beyond n."""
    state = SkeletonState(path=[1])
    while state.path[-1] <= n:
        skeleton_step(state, rng, log_switch=math.inf)
    return state.path


def kappa_of_n(path: list[int], n: int) -> int:
    """Number of doublings among the first n steps: max{k : s_k <= n}."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if not path or path[-1] <= n:
        raise TrajectoryTooShort(f"trajectory ends at s={path[-1] if path else None}, needs > {n}")
    return bisect_right(path, n)


def kappa_sample(n: int, rng: RngStream) -> int:
    """kappa(n) drawn through the skeleton."""
    return kappa_of_n(skeleton_path_past(n, rng), n)


def size_of_n(path: list[int], n: int) -> int:
    """B_n read off doubling times: ``C_kappa + n - s_kappa``.

    ``C_1 = 2`` and ``C_k = 2 (C_{k-1} + s_k - s_{k-1})``.
    """
    kappa = kappa_of_n(path, n)
    if kappa == 0:
        return 0
    C = 2
    for prev, cur in zip(path, path[1:kappa]):
        C = 2 * (C + cur - prev)
    return C + n - path[kappa - 1]


def doubling_wait_cdf(C: int, x: float) -> float:
    """P(wait <= x | C): the next doubling comes within x steps."""
    if x <= 0:
        return 0.0
    return x / (C + x)
