"""Explicit arena trees for the doubling-at-root model."""

import logging
from collections import Counter
from dataclasses import dataclass

from ..config import DEFAULT_NODE_CAP, debug_checks_enabled
from ..errors import InvariantViolation, ResourceCapExceeded
from ..rng import RngStream

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StepEvent:
    """What a single growth step did."""

    doubled: bool
    chosen: int  # node index before the step
    depth: int  # depth of the chosen node before the step


@dataclass(frozen=True)
class TreeSummary:
    """Statistics extracted from one tree.

    ``degree_hist[i]`` is the number of nodes with exactly ``i`` children and
    ``height_hist[h]`` the number of nodes at depth ``h``; both are tuples with
    no trailing zeros so summaries compare and hash by value.
    """

    size_B: int
    degree_hist: tuple[int, ...]
    height_hist: tuple[int, ...]
    height_H: int
    kappa: int
    root_degree: int

    def degree_key(self) -> tuple[tuple[int, ...], int]:
        return (self.degree_hist, self.root_degree)

    def to_dict(self) -> dict:
        return {
            "B": self.size_B,
            "degree_hist": list(self.degree_hist),
            "height_hist": list(self.height_hist),
            "H": self.height_H,
            "kappa": self.kappa,
            "root_degree": self.root_degree,
        }


class TreeState:
    """Rooted ordered tree stored as parallel arrays indexed by node.

    Doubling keeps the old nodes as the left copy, appends the right copy at
    offset ``len(self)`` and then a new root whose children are the two old roots.
    With $DOUBLAB_DEBUG set, invariants are checked after every mutation.
    """

    def __init__(self, cap: int | None = None):
        self.parent: list[int | None] = [None]
        self.children: list[list[int]] = [[]]
        self.depth: list[int] = [0]
        self.root = 0
        self.step_count = 0
        self.kappa = 0
        self.cap = DEFAULT_NODE_CAP if cap is None else cap
        self.checked = debug_checks_enabled()

    def __len__(self) -> int:
        return len(self.depth)

    @property
    def size_B(self) -> int:
        """Number of non-root nodes."""
        return len(self.depth) - 1

    def copy(self) -> "TreeState":
        other = TreeState.__new__(TreeState)
        other.parent = list(self.parent)
        other.children = [list(c) for c in self.children]
        other.depth = list(self.depth)
        other.root = self.root
        other.step_count = self.step_count
        other.kappa = self.kappa
        other.cap = self.cap
        other.checked = self.checked
        return other

    def apply(self, node: int) -> StepEvent:
        """Grow by one step with ``node`` as the uniformly chosen node."""
        event = StepEvent(doubled=node == self.root, chosen=node, depth=self.depth[node])
        if event.doubled:
            self._double()
        else:
            self._attach(node)
        self.step_count += 1
        if self.checked:
            self.check_invariants()
        return event

    def step(self, rng: RngStream) -> StepEvent:
        return self.apply(rng.below(len(self)))

    def _double(self) -> None:
        size = len(self)
        if 2 * size + 1 > self.cap:
            raise ResourceCapExceeded("node count", 2 * size + 1, self.cap)

        old_root = self.root
        new_root = 2 * size
        shifted_parent = [p + size if p is not None else None for p in self.parent]
        shifted_children = [[c + size for c in kids] for kids in self.children]
        self.parent.extend(shifted_parent)
        self.children.extend(shifted_children)
        self.depth.extend(self.depth)
        self.depth = [d + 1 for d in self.depth]

        self.parent[old_root] = new_root
        self.parent[old_root + size] = new_root
        self.parent.append(None)
        self.children.append([old_root, old_root + size])
        self.depth.append(0)
        self.root = new_root
        self.kappa += 1

    def _attach(self, node: int) -> None:
        if len(self) + 1 > self.cap:
            raise ResourceCapExceeded("node count", len(self) + 1, self.cap)
        new = len(self)
        self.parent.append(node)
        self.children.append([])
        self.depth.append(self.depth[node] + 1)
        self.children[node].append(new)

    def check_invariants(self) -> None:
        """Raise InvariantViolation unless the arena is a valid tree."""
        roots = [i for i, p in enumerate(self.parent) if p is None]
        if roots != [self.root]:
            raise InvariantViolation(f"expected single root {self.root}, found {roots}")
        if self.depth[self.root] != 0:
            raise InvariantViolation("root depth must be 0")
        for i, p in enumerate(self.parent):
            if p is None:
                continue
            if self.depth[i] != self.depth[p] + 1:
                raise InvariantViolation(f"node {i}: depth {self.depth[i]} under parent depth {self.depth[p]}")
            if i not in self.children[p]:
                raise InvariantViolation(f"node {i} missing from children of {p}")
        if sum(len(c) for c in self.children) != self.size_B:
            raise InvariantViolation("edge count differs from B")


def _hist(values) -> tuple[int, ...]:
    counts = Counter(values)
    top = max(counts)
    return tuple(counts.get(i, 0) for i in range(top + 1))


def grow(n: int, rng: RngStream, cap: int | None = None) -> TreeState:
    """Apply ``n`` growth steps to the single-node tree."""
    if n < 0:
        raise ValueError("n must be non-negative")
    tree = TreeState(cap=cap)
    for _ in range(n):
        tree.step(rng)
    logger.debug("grew explicit tree: n=%d, nodes=%d, doublings=%d", n, len(tree), tree.kappa)
    return tree


def summarize(tree: TreeState) -> TreeSummary:
    """Degree and height histograms, height, size and doubling count."""
    height_hist = _hist(tree.depth)
    return TreeSummary(
        size_B=tree.size_B,
        degree_hist=_hist(len(c) for c in tree.children),
        height_hist=height_hist,
        height_H=len(height_hist) - 1,
        kappa=tree.kappa,
        root_degree=len(tree.children[tree.root]),
    )


def sample_node_heights(tree: TreeState, k: int, rng: RngStream) -> list[int]:
    """Depths of ``k`` independent uniform nodes."""
    if k < 1:
        raise ValueError("k must be at least 1")
    return [tree.depth[rng.below(len(tree))] for _ in range(k)]
