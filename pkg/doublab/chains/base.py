"""Base class for sufficient-statistic chains."""

from abc import ABC, abstractmethod
from collections.abc import Hashable, Iterator
from fractions import Fraction
from typing import Any

from ..rng import RngStream

Key = Hashable


class Chain(ABC):
    """A Markov chain on a tree statistic.

    ``step`` mutates a simulation state in place; ``kernel`` lists the exact
    transition law from a canonical key, which the exact oracles push forward.
    """

    @property
    @abstractmethod
    def name(self) -> str:
        """Chain name."""
        ...

    @abstractmethod
    def initial(self) -> Any:
        """Simulation state at n = 0."""
        ...

    @abstractmethod
    def step(self, state: Any, rng: RngStream) -> Any:
        """Advance one growth step; returns the (mutated) state."""
        ...

    @abstractmethod
    def key(self, state: Any) -> Key:
        """Canonical hashable form of a simulation state."""
        ...

    @abstractmethod
    def kernel(self, key: Key) -> Iterator[tuple[Fraction, Key]]:
        """Exact transitions ``(probability, next key)`` out of ``key``."""
        ...

    def initial_key(self) -> Key:
        return self.key(self.initial())

    def run(self, n: int, rng: RngStream) -> Any:
        """Apply ``n`` steps from the initial state."""
        state = self.initial()
        for _ in range(n):
            self.step(state, rng)
        return state


def trim(counts: list[int]) -> tuple[int, ...]:
    """Histogram as a tuple without trailing zeros."""
    end = len(counts)
    while end > 1 and counts[end - 1] == 0:
        end -= 1
    return tuple(counts[:end])
