"""Profile chain: number of nodes at each height."""

from collections.abc import Iterator
from dataclasses import dataclass, field
from fractions import Fraction

from ..rng import RngStream
from .base import Chain, trim
from .fenwick import FenwickSampler

ProfileKey = tuple[int, ...]


@dataclass
class ProfileChainState:
    """Height histogram ``hist[h]``; ``hist[0] == 1`` is the root alone.

    The sampler weights every height by its count except height 0, so a draw
    is the height of a uniform non-root node.
    """

    hist: list[int] = field(default_factory=lambda: [1])
    B: int = 0
    n: int = 0
    kappa: int = 0
    sampler: FenwickSampler = field(default_factory=FenwickSampler, repr=False)

    def __post_init__(self) -> None:
        self._resync()

    def _resync(self) -> None:
        self.sampler.rebuild([0] + self.hist[1:], 2 * len(self.hist) + 2)

    @property
    def height(self) -> int:
        return len(self.hist) - 1

    def copy(self) -> "ProfileChainState":
        return ProfileChainState(hist=list(self.hist), B=self.B, n=self.n, kappa=self.kappa)

    def sample_parent(self, rng: RngStream) -> int:
        """Height of a uniform non-root node."""
        return self.sampler.sample(rng)

    def double(self) -> None:
        """Two copies under a new root."""
        self.hist = [1] + [2 * c for c in self.hist]
        self.B = 2 * self.B + 2
        self.kappa += 1
        self._resync()

    def attach(self, parent_height: int) -> None:
        """New leaf below a node at ``parent_height``."""
        child = parent_height + 1
        if child == len(self.hist):
            self.hist.append(0)
        self.hist[child] += 1
        self.sampler.increment(child, 1)
        self.B += 1


class ProfileChain(Chain):
    @property
    def name(self) -> str:
        return "profile"

    def initial(self) -> ProfileChainState:
        return ProfileChainState()

    def step(self, state: ProfileChainState, rng: RngStream) -> ProfileChainState:
        return profile_step(state, rng)

    def key(self, state: ProfileChainState) -> ProfileKey:
        return trim(state.hist)

    def kernel(self, key: ProfileKey) -> Iterator[tuple[Fraction, ProfileKey]]:
        yield from profile_kernel(key)


def profile_kernel(hist: ProfileKey) -> Iterator[tuple[Fraction, ProfileKey]]:
    """Exact profile transitions out of ``hist``."""
    b = sum(hist) - 1
    yield Fraction(1, b + 1), (1, *(2 * c for c in hist))
    for h in range(1, len(hist)):
        if hist[h]:
            nxt = list(hist) + [0]
            nxt[h + 1] += 1
            yield Fraction(hist[h], b + 1), trim(nxt)


def profile_step(state: ProfileChainState, rng: RngStream) -> ProfileChainState:
    """One step of the profile chain, in place."""
    state.n += 1
    if rng.below(state.B + 1) == 0:
        state.double()
    else:
        state.attach(state.sample_parent(rng))
    return state


def profile_run(n: int, rng: RngStream) -> ProfileChainState:
    state = ProfileChainState()
    for _ in range(n):
        profile_step(state, rng)
    return state
