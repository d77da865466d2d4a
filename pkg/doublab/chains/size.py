"""Size chain: the number B of non-root nodes.

From B a doubling happens with probability 1/(B+1) and maps B to 2B+2;
otherwise B grows by one.
"""

import logging
from collections.abc import Iterator
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.special import digamma

from ..rng import TWO_64, RngStream
from .base import Chain

logger = logging.getLogger(__name__)


@dataclass
class SizeChainState:
    """Non-root count after ``n`` steps.

    ``harmonic`` accumulates ``sum 1/(B_i + 1)`` over the steps taken and
    ``clock`` the root-ring time ``sum Exp(B_i + 1)`` when tracked.
    """

    n: int = 0
    B: int = 0
    kappa: int = 0
    doubling_log: list[int] | None = None
    harmonic: float = 0.0
    clock: float | None = None
    harmonic_at: dict[int, float] = field(default_factory=dict)

    def kappa_at(self, m: int) -> int:
        """Doublings among the first ``m`` steps (needs the doubling log)."""
        if self.doubling_log is None:
            raise ValueError("doubling log was not recorded")
        return sum(1 for s in self.doubling_log if s <= m)


class SizeChain(Chain):
    """Step-by-step size chain."""

    def __init__(self, log_doublings: bool = False, track_clock: bool = False):
        self.log_doublings = log_doublings
        self.track_clock = track_clock

    @property
    def name(self) -> str:
        return "size"

    def initial(self) -> SizeChainState:
        return SizeChainState(
            doubling_log=[] if self.log_doublings else None,
            clock=0.0 if self.track_clock else None,
        )

    def step(self, state: SizeChainState, rng: RngStream) -> SizeChainState:
        return size_step(state, rng)

    def key(self, state: SizeChainState) -> int:
        return state.B

    def kernel(self, key: int) -> Iterator[tuple[Fraction, int]]:
        b = key
        yield Fraction(1, b + 1), 2 * b + 2
        if b > 0:
            yield Fraction(b, b + 1), b + 1


def size_step(state: SizeChainState, rng: RngStream) -> SizeChainState:
    """One step of the size chain, in place."""
    rate = state.B + 1
    state.harmonic += 1.0 / rate
    if state.clock is not None:
        state.clock += rng.exponential(rate)
    state.n += 1
    if rng.below(rate) == 0:
        state.B = 2 * state.B + 2
        state.kappa += 1
        if state.doubling_log is not None:
            state.doubling_log.append(state.n)
    else:
        state.B += 1
    return state


def non_doubling_run(B: int, rng: RngStream) -> int:
    """Number J of non-doubling steps taken from B before the next doubling.

    ``P(J >= j) = B / (B + j)``; drawn exactly from a dyadic uniform.
    """
    if B == 0:
        return 0
    u = rng.dyadic()
    return (B * (TWO_64 - u)) // u


def _harmonic_span(B: int, terms: int) -> float:
    """1/(B+1) + ... + 1/(B+terms)."""
    return float(digamma(B + terms + 1) - digamma(B + 1))


def size_run(
    n: int,
    rng: RngStream,
    log_doublings: bool = False,
    track_clock: bool = False,
    checkpoints: list[int] | None = None,
) -> SizeChainState:
    """Size chain after ``n`` steps, jumping from one doubling to the next.

    The law of the result equals ``n`` applications of ``size_step``. The
    harmonic sum reached at each step in ``checkpoints`` is stored in
    ``harmonic_at``.
    """
    state = SizeChainState(
        doubling_log=[] if log_doublings else None,
        clock=0.0 if track_clock else None,
    )
    pending = sorted(c for c in (checkpoints or []) if 0 < c <= n)
    while state.n < n:
        run = min(non_doubling_run(state.B, rng), n - state.n)
        doubles = state.n + run < n
        terms = run + 1 if doubles else run
        while pending and pending[0] <= state.n + terms:
            state.harmonic_at[pending[0]] = state.harmonic + _harmonic_span(state.B, pending[0] - state.n)
            pending.pop(0)
        if terms:
            state.harmonic += _harmonic_span(state.B, terms)
            if state.clock is not None:
                rates = np.arange(state.B + 1, state.B + terms + 1, dtype=float)
                state.clock += float(rng.generator.exponential(1.0 / rates).sum())
        state.B += run
        state.n += run
        if doubles:
            state.n += 1
            state.B = 2 * state.B + 2
            state.kappa += 1
            if state.doubling_log is not None:
                state.doubling_log.append(state.n)
    logger.debug("size run: n=%d, B=%d, kappa=%d", n, state.B, state.kappa)
    return state
