"""Explicit trees for the double-everywhere variant.

A step picks a uniform node ``u`` and replaces the subtree rooted at ``u`` by a
new node whose two children are copies of that subtree.
"""

import logging

from ..config import DEFAULT_NODE_CAP
from ..errors import InvariantViolation, ResourceCapExceeded
from ..rng import RngStream

logger = logging.getLogger(__name__)

Shape = tuple  # nested tuple of child shapes, children sorted


class InfTreeState:
    """Arena tree carrying the strict-descendant count of every node."""

    def __init__(self, cap: int | None = None):
        self.parent: list[int | None] = [None]
        self.children: list[list[int]] = [[]]
        self.depth: list[int] = [0]
        self.subtree_size: list[int] = [0]
        self.root = 0
        self.step_count = 0
        self.cap = DEFAULT_NODE_CAP if cap is None else cap

    def __len__(self) -> int:
        return len(self.depth)

    def _subtree(self, u: int) -> list[int]:
        """Nodes of the subtree at ``u`` in preorder."""
        order = []
        stack = [u]
        while stack:
            node = stack.pop()
            order.append(node)
            stack.extend(reversed(self.children[node]))
        return order

    def apply(self, u: int) -> int:
        """Double the subtree at ``u``; returns the size increase ``s(u) + 2``."""
        growth = self.subtree_size[u] + 2
        if len(self) + growth > self.cap:
            raise ResourceCapExceeded("node count", len(self) + growth, self.cap)

        nodes = self._subtree(u)
        up = self.parent[u]
        w = len(self)
        offset = w + 1
        remap = {old: offset + i for i, old in enumerate(nodes)}

        # new node w takes u's place
        self.parent.append(up)
        self.children.append([u, remap[u]])
        self.depth.append(self.depth[u])
        self.subtree_size.append(2 * (self.subtree_size[u] + 1))

        for old in nodes:
            self.depth[old] += 1
        for old in nodes:
            self.parent.append(remap[self.parent[old]] if old != u else w)
            self.children.append([remap[c] for c in self.children[old]])
            self.depth.append(self.depth[old])
            self.subtree_size.append(self.subtree_size[old])
        self.parent[u] = w

        if up is None:
            self.root = w
        else:
            slot = self.children[up].index(u)
            self.children[up][slot] = w
            node = up
            while node is not None:
                self.subtree_size[node] += growth
                node = self.parent[node]

        self.step_count += 1
        return growth

    def check_invariants(self) -> None:
        """Subtree sizes match the children lists and sum to the total depth."""
        if self.parent[self.root] is not None or self.depth[self.root] != 0:
            raise InvariantViolation("root must have no parent and depth 0")
        for node in self._subtree(self.root)[::-1]:
            expected = sum(1 + self.subtree_size[c] for c in self.children[node])
            if self.subtree_size[node] != expected:
                raise InvariantViolation(f"node {node}: subtree size {self.subtree_size[node]} != {expected}")
            for c in self.children[node]:
                if self.parent[c] != node or self.depth[c] != self.depth[node] + 1:
                    raise InvariantViolation(f"node {c} inconsistent with parent {node}")
        if sum(self.subtree_size) != sum(self.depth):
            raise InvariantViolation("sum of subtree sizes differs from sum of depths")
        if len(self) > 2 ** (self.step_count + 1) - 1:
            raise InvariantViolation(f"size {len(self)} above 2^(n+1)-1 at n={self.step_count}")


def inf_step(tree: InfTreeState, rng: RngStream) -> int:
    """One uniform double-everywhere step; returns the size increase."""
    return tree.apply(rng.below(len(tree)))


def inf_grow(n: int, rng: RngStream, cap: int | None = None) -> InfTreeState:
    tree = InfTreeState(cap=cap)
    for _ in range(n):
        inf_step(tree, rng)
    logger.debug("grew double-everywhere tree: n=%d, size=%d", n, len(tree))
    return tree


def canonical_shape(tree: InfTreeState, node: int | None = None) -> Shape:
    """Unordered shape of the subtree at ``node`` as a sorted nested tuple."""
    node = tree.root if node is None else node
    shapes: dict[int, Shape] = {}
    for v in reversed(tree._subtree(node)):
        shapes[v] = tuple(sorted(shapes[c] for c in tree.children[v]))
    return shapes[node]
