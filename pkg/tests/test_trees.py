from collections import Counter

import pytest

from doublab.config import DEBUG_ENV
from doublab.errors import InvariantViolation, ResourceCapExceeded
from doublab.trees import TreeState, TreeSummary, grow, sample_node_heights, summarize


def test_initial_tree():
    tree = TreeState()
    assert len(tree) == 1
    assert summarize(tree) == TreeSummary(
        size_B=0, degree_hist=(1,), height_hist=(1,), height_H=0, kappa=0, root_degree=0
    )


def test_first_step_always_doubles(rng):
    tree = grow(1, rng)
    s = summarize(tree)
    assert (s.size_B, s.kappa, s.height_H, s.root_degree) == (2, 1, 1, 2)
    assert s.degree_hist == (2, 0, 1)


def test_doubling_copies_left_then_right(scripted):
    tree = TreeState()
    tree.apply(0)
    # old root 0 stays as left child, its copy 1 is the right child, new root 2
    assert tree.root == 2
    assert tree.children[2] == [0, 1]
    event = tree.step(scripted(below=[1]))
    assert not event.doubled and event.depth == 1
    assert tree.parent[3] == 1 and tree.depth[3] == 2
    tree.check_invariants()


def test_double_after_attach(scripted):
    tree = TreeState()
    tree.apply(0)
    tree.apply(0)  # attach under node 0 (a depth-1 node, not the root)
    tree.apply(tree.root)
    s = summarize(tree)
    assert s.size_B == 2 * 3 + 2
    assert s.height_hist == (1, 2, 4, 2)
    assert s.kappa == 2
    tree.check_invariants()


def test_invariants_hold_along_random_growth(rng):
    tree = TreeState()
    for _ in range(60):
        tree.step(rng)
        tree.check_invariants()
    s = summarize(tree)
    assert sum(s.degree_hist) == s.size_B + 1
    assert sum(i * c for i, c in enumerate(s.degree_hist)) == s.size_B
    assert s.height_hist[0] == 1


def test_cap_is_enforced(rng):
    with pytest.raises(ResourceCapExceeded):
        grow(30, rng, cap=20)


def test_sample_node_heights_are_depths(rng):
    tree = grow(12, rng)
    heights = sample_node_heights(tree, 3000, rng)
    assert set(heights) <= set(tree.depth)
    # the root is one node out of len(tree)
    share = Counter(heights)[0] / 3000
    assert share < 5 / len(tree) + 0.02


def test_summary_to_dict(rng):
    s = summarize(grow(3, rng))
    d = s.to_dict()
    assert d["B"] == s.size_B and d["H"] == s.height_H
    assert d["degree_hist"] == list(s.degree_hist)


def test_debug_mode_checks_every_mutation(monkeypatch):
    monkeypatch.setenv(DEBUG_ENV, "1")
    tree = TreeState()
    assert tree.checked and tree.copy().checked
    tree.apply(0)
    tree.depth[0] = 7
    with pytest.raises(InvariantViolation):
        tree.apply(1)


def test_mutations_unchecked_by_default():
    tree = TreeState()
    assert not tree.checked
    tree.apply(0)
    tree.depth[0] = 7
    tree.apply(1)
    assert len(tree) == 4
