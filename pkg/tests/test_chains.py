from fractions import Fraction

import pytest

from doublab.chains import (
    DegreeChain,
    DegreeChainState,
    ProfileChainState,
    SizeChain,
    SizeChainState,
    degree_step,
    get_chain,
    profile_step,
    size_run,
    size_step,
)
from doublab.chains.size import non_doubling_run
from doublab.errors import ConfigError
from doublab.oracles import exact_size_distribution
from doublab.verify.stats import chi_square_gof


def test_size_kernel():
    assert dict((b, p) for p, b in SizeChain().kernel(2)) == {6: Fraction(1, 3), 3: Fraction(2, 3)}
    assert list(SizeChain().kernel(0)) == [(Fraction(1), 2)]


def test_size_step_scripted(scripted):
    state = SizeChainState(doubling_log=[])
    size_step(state, scripted(below=[0]))
    assert state.B == 2
    size_step(state, scripted(below=[1]))
    assert state.B == 3
    size_step(state, scripted(below=[0]))
    assert (state.B, state.kappa, state.n) == (8, 2, 3)
    assert state.doubling_log == [1, 3]
    assert state.kappa_at(2) == 1


def test_non_doubling_run_from_dyadic(scripted):
    # P(J >= j) = B / (B + j): u = 1/2 gives J = B
    assert non_doubling_run(2, scripted(dyadic=[1 << 63])) == 2
    assert non_doubling_run(0, scripted()) == 0


def test_size_run_bookkeeping(rng):
    state = size_run(500, rng, log_doublings=True, checkpoints=[50, 500])
    assert state.n == 500
    assert state.kappa == len(state.doubling_log)
    assert state.harmonic_at[500] == pytest.approx(state.harmonic)
    assert 0 < state.harmonic_at[50] < state.harmonic


@pytest.mark.statistical
def test_size_run_matches_exact_law(rng):
    law = exact_size_distribution(8)
    samples = [size_run(8, rng).B for _ in range(4000)]
    result = chi_square_gof(samples, {b: float(p) for b, p in law.items()})
    assert result.pvalue > 0.001


@pytest.mark.statistical
def test_size_run_mean(rng):
    mean = sum(size_run(200, rng).B for _ in range(2000)) / 2000
    assert mean == pytest.approx(400, rel=0.05)


def test_degree_step_scripted(scripted):
    state = DegreeChainState()
    degree_step(state, scripted(below=[0]))
    assert (state.counts, state.root_degree, state.B) == ([2, 0, 1], 2, 2)

    doubled = DegreeChainState(counts=[2, 0, 1], root_degree=2, B=2)
    degree_step(doubled, scripted(below=[0]))
    assert (doubled.counts, doubled.B) == ([4, 0, 3], 6)

    attached = DegreeChainState(counts=[2, 0, 1], root_degree=2, B=2)
    degree_step(attached, scripted(below=[1, 0]))
    assert (attached.counts, attached.B) == ([2, 1, 1], 3)


def test_degree_aggregated():
    state = DegreeChainState(counts=[5, 2, 1, 1], root_degree=3, B=7)
    assert state.aggregated(2) == [5, 2, 2]
    assert state.aggregated(5) == [5, 2, 1, 1, 0, 0]


def test_degree_kernel_sums_to_one():
    chain = DegreeChain()
    key = ((2, 1, 1), 2)
    assert sum(p for p, _ in chain.kernel(key)) == 1


def test_profile_step_scripted(scripted):
    state = ProfileChainState()
    profile_step(state, scripted(below=[0]))
    assert state.hist == [1, 2]

    doubled = ProfileChainState(hist=[1, 2], B=2)
    profile_step(doubled, scripted(below=[0]))
    assert doubled.hist == [1, 2, 4] and doubled.B == 6

    attached = ProfileChainState(hist=[1, 2], B=2)
    profile_step(attached, scripted(below=[1, 1]))
    assert attached.hist == [1, 2, 1] and attached.height == 2


def test_factory_names():
    assert get_chain("tagged_3").k == 3
    assert get_chain("profile").name == "profile"
    with pytest.raises(ConfigError):
        get_chain("nope")
    with pytest.raises(ConfigError):
        get_chain("tagged", attach="sideways")
