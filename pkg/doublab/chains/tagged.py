"""Tagged-node heights.

Each of k tags follows a node of the growing tree. At a doubling a tag moves
to the new root with probability 1/(2(B+1)+1) (a reset) and otherwise to a copy
of its node one level deeper. At any other step a tag moves to the new node
with probability 1/(B+2); when several tags move together the lowest-indexed
one owns the new node and the others count a jump.

Two attach modes decide the new node's parent:

- ``tag``: the lowest moving tag's node. Only B and the heights are carried.
- ``uniform``: a uniform non-root node drawn from a carried height profile.
  This keeps every tag distributed as a uniform node of the tree at all n.
"""

import logging
from collections.abc import Iterator
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from ..rng import TWO_64, RngStream
from .base import Chain, trim
from .profile import ProfileChainState
from .size import non_doubling_run

logger = logging.getLogger(__name__)

ATTACH_MODES = ("tag", "uniform")


@dataclass
class TaggedHeightsState:
    """Heights of k tags plus per-tag reset and jump bookkeeping."""

    k: int
    attach: str = "tag"
    heights: list[int] = field(default_factory=list)
    B: int = 0
    n: int = 0
    reset_counts: list[int] = field(default_factory=list)
    jump_counts: list[int] = field(default_factory=list)
    last_reset: list[int] = field(default_factory=list)  # step of the latest reset, 0 if none
    profile: ProfileChainState | None = None

    def __post_init__(self) -> None:
        if self.attach not in ATTACH_MODES:
            raise ValueError(f"Unknown attach mode: {self.attach}")
        if self.k < 1:
            raise ValueError("k must be at least 1")
        self.heights = self.heights or [0] * self.k
        self.reset_counts = self.reset_counts or [0] * self.k
        self.jump_counts = self.jump_counts or [0] * self.k
        self.last_reset = self.last_reset or [0] * self.k
        if self.attach == "uniform" and self.profile is None:
            self.profile = ProfileChainState()

    def _double(self, resets: list[bool]) -> None:
        self.n += 1
        for j, reset in enumerate(resets):
            if reset:
                self.heights[j] = 0
                self.reset_counts[j] += 1
                self.last_reset[j] = self.n
            else:
                self.heights[j] += 1
        self.B = 2 * self.B + 2
        if self.profile is not None:
            self.profile.double()

    def _move(self, flagged: list[int], new_height: int) -> None:
        for j in flagged:
            self.heights[j] = new_height
        for j in flagged[1:]:
            self.jump_counts[j] += 1


class TaggedChain(Chain):
    def __init__(self, k: int, attach: str = "tag"):
        self.k = k
        self.attach = attach

    @property
    def name(self) -> str:
        return f"tagged_{self.k}"

    def initial(self) -> TaggedHeightsState:
        return TaggedHeightsState(k=self.k, attach=self.attach)

    def step(self, state: TaggedHeightsState, rng: RngStream) -> TaggedHeightsState:
        return tagged_step(state, rng)

    def key(self, state: TaggedHeightsState) -> tuple:
        if state.profile is not None:
            return (trim(state.profile.hist), tuple(state.heights))
        return (state.B, tuple(state.heights))

    def kernel(self, key: tuple) -> Iterator[tuple[Fraction, tuple]]:
        base, heights = key
        if self.attach == "uniform":
            hist = base
            b = sum(hist) - 1
        else:
            b = base
        k = len(heights)

        p_double = Fraction(1, b + 1)
        p_reset = Fraction(1, 2 * b + 3)
        doubled_base = (1, *(2 * c for c in hist)) if self.attach == "uniform" else 2 * b + 2
        for resets in product((False, True), repeat=k):
            p = p_double
            for r in resets:
                p *= p_reset if r else 1 - p_reset
            nxt = tuple(0 if r else h + 1 for r, h in zip(resets, heights))
            yield p, (doubled_base, nxt)

        if b == 0:
            return
        p_flag = Fraction(1, b + 2)
        if self.attach == "uniform":
            parents = [
                (Fraction(hist[h], b), h, nxt_hist)
                for h, nxt_hist in _attachments(hist)
            ]
        else:
            parents = [(Fraction(1), None, b + 1)]
        for flags in product((False, True), repeat=k):
            p_flags = Fraction(b, b + 1)
            for f in flags:
                p_flags *= p_flag if f else 1 - p_flag
            flagged = [j for j, f in enumerate(flags) if f]
            for p_parent, h, nxt_base in parents:
                if flagged:
                    new = (h if h is not None else heights[flagged[0]]) + 1
                    nxt = tuple(new if f else x for f, x in zip(flags, heights))
                else:
                    nxt = heights
                yield p_flags * p_parent, (nxt_base, nxt)


def _attachments(hist: tuple[int, ...]) -> Iterator[tuple[int, tuple[int, ...]]]:
    for h in range(1, len(hist)):
        if hist[h]:
            nxt = list(hist) + [0]
            nxt[h + 1] += 1
            yield h, trim(nxt)


def tagged_step(state: TaggedHeightsState, rng: RngStream) -> TaggedHeightsState:
    """One growth step for every tag, in place."""
    b = state.B
    if rng.below(b + 1) == 0:
        state._double([rng.below(2 * b + 3) == 0 for _ in range(state.k)])
        return state

    flagged = [j for j in range(state.k) if rng.below(b + 2) == 0]
    if state.profile is not None:
        parent = state.profile.sample_parent(rng)
        state.profile.attach(parent)
        if flagged:
            state._move(flagged, parent + 1)
    elif flagged:
        state._move(flagged, state.heights[flagged[0]] + 1)
    state.B += 1
    state.n += 1
    return state


def _next_flag(base: int, rng: RngStream) -> int:
    """Offset T of a tag's next move when the stretch starts from B = base.

    ``P(T >= m) = (base + 1) / (base + 1 + m)``.
    """
    u = rng.dyadic()
    return ((base + 1) * (TWO_64 - u)) // u


def tagged_run(n: int, k: int, rng: RngStream, attach: str = "tag") -> TaggedHeightsState:
    """Tag heights after n steps.

    In ``tag`` mode the run jumps between doublings and between tag moves, so
    its cost grows with the number of events rather than with n.
    """
    state = TaggedHeightsState(k=k, attach=attach)
    if attach == "uniform":
        for _ in range(n):
            tagged_step(state, rng)
        return state

    while state.n < n:
        b0 = state.B
        run = min(non_doubling_run(b0, rng), n - state.n)
        doubles = state.n + run < n

        upcoming = [_next_flag(b0, rng) for _ in range(k)]
        while True:
            i = min(upcoming)
            if i >= run:
                break
            flagged = [j for j in range(k) if upcoming[j] == i]
            state._move(flagged, state.heights[flagged[0]] + 1)
            for j in flagged:
                upcoming[j] = i + 1 + _next_flag(b0 + i + 1, rng)

        state.B = b0 + run
        state.n += run
        if doubles:
            b = state.B
            state._double([rng.below(2 * b + 3) == 0 for _ in range(k)])
    logger.debug("tagged run: n=%d, k=%d, heights=%s", n, k, state.heights)
    return state
