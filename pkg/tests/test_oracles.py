from fractions import Fraction

import pytest

from doublab.errors import InvariantViolation, ResourceCapExceeded
from doublab.oracles import (
    RationalDist,
    enumerate_exact,
    enumerate_tagged_heights,
    exact_moment,
    exact_size_distribution,
    exact_statistic_distribution,
    inf_tree_exact_mean,
    inf_tree_lower_bound,
    m_k,
    moment_polynomial,
    tagged_heights,
)
from doublab.oracles.enumerate import degree_key, profile_key, size_key
from doublab.trees import TreeSummary


def test_moment_limits():
    assert [m_k(k) for k in range(1, 5)] == [2, 5, Fraction(50, 3), Fraction(475, 6)]


def test_exact_moments_match_closed_forms():
    for n in range(61):
        assert exact_moment(n, 1) == 2 * n
        assert exact_moment(n, 2) == 5 * n * n - n


def test_moment_polynomial():
    assert moment_polynomial(2) == (0, -1, 5)
    assert moment_polynomial(1) == (0, 2)


def test_size_distribution():
    assert exact_size_distribution(2).as_dict() == {3: Fraction(2, 3), 6: Fraction(1, 3)}
    for n in range(13):
        law = exact_size_distribution(n)
        assert law.mean() == 2 * n
        assert law.expect(lambda b: b * b) == exact_moment(n, 2)


def test_size_distribution_cap():
    with pytest.raises(ResourceCapExceeded):
        exact_size_distribution(30)


def test_statistic_laws_at_two_steps():
    assert exact_statistic_distribution(2, "profile").as_dict() == {
        (1, 2, 4): Fraction(1, 3),
        (1, 2, 1): Fraction(2, 3),
    }
    assert exact_statistic_distribution(2, "degree").as_dict() == {
        ((4, 0, 3), 2): Fraction(1, 3),
        ((2, 1, 1), 2): Fraction(2, 3),
    }


def test_enumerate_at_zero():
    law = enumerate_exact(0)
    assert law.as_dict() == {TreeSummary(0, (1,), (1,), 0, 0, 0): Fraction(1)}


@pytest.mark.parametrize("n", range(5))
def test_enumeration_agrees_with_chains(n):
    trees = enumerate_exact(n)
    assert trees.marginal(size_key) == exact_statistic_distribution(n, "size")
    assert trees.marginal(degree_key) == exact_statistic_distribution(n, "degree")
    assert trees.marginal(profile_key) == exact_statistic_distribution(n, "profile")
    heights = tagged_heights(exact_statistic_distribution(n, "tagged", k=1, attach="uniform"))
    assert heights == enumerate_tagged_heights(n, 1)


def test_enumeration_cap():
    with pytest.raises(ResourceCapExceeded):
        enumerate_exact(6)


def test_inf_tree_mean():
    assert inf_tree_exact_mean(1) == 3
    assert inf_tree_exact_mean(2) == Fraction(17, 3)


def test_inf_tree_bound():
    assert inf_tree_lower_bound(1) == 0.0
    assert inf_tree_lower_bound(11) == pytest.approx(9.3962, abs=1e-3)


def test_rational_dist_validation():
    with pytest.raises(InvariantViolation):
        RationalDist({1: Fraction(1, 2)})
    with pytest.raises(InvariantViolation):
        RationalDist({1: Fraction(3, 2), 2: Fraction(-1, 2)})


def test_json_keeps_tuple_keys():
    law = exact_statistic_distribution(2, "tagged", k=2, attach="tag")
    assert RationalDist.from_json(law.to_json()) == law
