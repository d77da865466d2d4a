"""Degree chain: how many nodes have exactly i children."""

from collections.abc import Iterator
from dataclasses import dataclass, field
from fractions import Fraction

from ..rng import RngStream
from .base import Chain, trim
from .fenwick import FenwickSampler

DegreeKey = tuple[tuple[int, ...], int]


@dataclass
class DegreeChainState:
    """Degree counts ``counts[i] = U_i`` plus the root's own degree.

    The sampler holds ``counts[i]`` minus one for the root's class, so a draw
    is a uniform non-root node.
    """

    counts: list[int] = field(default_factory=lambda: [1])
    root_degree: int = 0
    B: int = 0
    n: int = 0
    kappa: int = 0
    sampler: FenwickSampler = field(default_factory=FenwickSampler, repr=False)

    def __post_init__(self) -> None:
        self._resync()

    def _resync(self) -> None:
        weights = list(self.counts)
        weights[self.root_degree] -= 1
        self.sampler.rebuild(weights, 2 * len(weights) + 2)

    def proportions(self) -> list[float]:
        """``U_i / (B + 1)`` for every degree present."""
        return [c / (self.B + 1) for c in self.counts]

    def aggregated(self, m: int) -> list[int]:
        """Counts for degrees ``0 .. m-1`` and the tail ``>= m`` lumped at index m."""
        head = [self.counts[i] if i < len(self.counts) else 0 for i in range(m)]
        return head + [sum(self.counts[m:])]


class DegreeChain(Chain):
    @property
    def name(self) -> str:
        return "degree"

    def initial(self) -> DegreeChainState:
        return DegreeChainState()

    def step(self, state: DegreeChainState, rng: RngStream) -> DegreeChainState:
        return degree_step(state, rng)

    def key(self, state: DegreeChainState) -> DegreeKey:
        return (trim(state.counts), state.root_degree)

    def kernel(self, key: DegreeKey) -> Iterator[tuple[Fraction, DegreeKey]]:
        counts, root_degree = key
        b = sum(i * c for i, c in enumerate(counts))
        yield Fraction(1, b + 1), (_doubled(counts), 2)
        for i, c in enumerate(counts):
            weight = c - (1 if i == root_degree else 0)
            if weight > 0:
                nxt = list(counts) + [0]
                nxt[i] -= 1
                nxt[i + 1] += 1
                nxt[0] += 1
                yield Fraction(weight, b + 1), (trim(nxt), root_degree)


def _doubled(counts) -> tuple[int, ...]:
    nxt = [2 * c for c in counts] + [0, 0]
    nxt[2] += 1
    return trim(nxt)


def degree_step(state: DegreeChainState, rng: RngStream) -> DegreeChainState:
    """One step of the degree chain, in place."""
    state.n += 1
    if rng.below(state.B + 1) == 0:
        state.counts = list(_doubled(state.counts))
        state.root_degree = 2
        state.B = 2 * state.B + 2
        state.kappa += 1
        state._resync()
        return state

    i = state.sampler.sample(rng)
    if i + 1 >= len(state.counts):
        state.counts.append(0)
    state.counts[i] -= 1
    state.counts[i + 1] += 1
    state.counts[0] += 1
    state.sampler.increment(i, -1)
    state.sampler.increment(i + 1, 1)
    state.sampler.increment(0, 1)
    state.B += 1
    return state


def degree_run(n: int, rng: RngStream) -> DegreeChainState:
    state = DegreeChainState()
    for _ in range(n):
        degree_step(state, rng)
    return state
