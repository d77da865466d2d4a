import math

import pytest

from doublab.chains import (
    SkeletonState,
    doubling_wait_cdf,
    kappa_of_n,
    kappa_sample,
    size_of_n,
    size_run,
    skeleton_run,
    skeleton_step,
)
from doublab.chains.skeleton import skeleton_path_past
from doublab.errors import InvariantViolation, TrajectoryTooShort
from doublab.oracles import exact_size_distribution
from doublab.verify.stats import chi_square_gof, chi_square_two_sample


def test_exact_step_with_half(scripted):
    state = SkeletonState(path=[1])
    skeleton_step(state, scripted(dyadic=[1 << 63]))
    assert (state.k, state.s, state.C) == (2, 3, 8)
    assert state.path == [1, 3]
    assert state.log_prod == pytest.approx(math.log(2))


def test_kappa_of_n():
    path = [1, 3, 10]
    assert kappa_of_n(path, 0) == 0
    assert kappa_of_n(path, 1) == 1
    assert kappa_of_n(path, 9) == 2
    with pytest.raises(TrajectoryTooShort):
        kappa_of_n(path, 10)
    with pytest.raises(ValueError):
        kappa_of_n(path, -1)


def test_size_of_n():
    path = [1, 3, 10]
    assert size_of_n(path, 0) == 0
    assert size_of_n(path, 1) == 2
    assert size_of_n(path, 3) == 8
    assert size_of_n(path, 5) == 10


def test_log_switch_drops_integers(rng):
    state = skeleton_run(40, rng, log_switch=20)
    assert state.log_mode and state.s is None and state.C is None
    assert state.k == 40
    assert state.log_s < state.log_C


def test_sandwich_holds_across_the_switch(rng):
    state = skeleton_run(400, rng, log_switch=300, check_sandwich=True)
    assert state.log_mode
    state.check_sandwich()


def test_sandwich_violation_is_reported():
    state = SkeletonState(k=3, log_C=100.0)
    with pytest.raises(InvariantViolation):
        state.check_sandwich()


def test_path_passes_n(rng):
    path = skeleton_path_past(1000, rng)
    assert path[0] == 1 and path[-1] > 1000
    assert path == sorted(path)


def test_doubling_wait_cdf():
    assert doubling_wait_cdf(2, 2) == 0.5
    assert doubling_wait_cdf(5, 0) == 0.0


@pytest.mark.statistical
def test_wait_follows_doubling_law(rng):
    C, top = 50, 200
    waits = []
    for _ in range(5000):
        state = SkeletonState(C=C)
        skeleton_step(state, rng)
        waits.append(min(state.s - 1, top + 1))
    probabilities = {j: doubling_wait_cdf(C, j) - doubling_wait_cdf(C, j - 1) for j in range(1, top + 1)}
    probabilities[top + 1] = 1 - doubling_wait_cdf(C, top)
    assert chi_square_gof(waits, probabilities).pvalue > 0.001


@pytest.mark.statistical
def test_skeleton_size_matches_exact_law(rng):
    law = exact_size_distribution(8)
    samples = [size_of_n(skeleton_path_past(8, rng), 8) for _ in range(4000)]
    result = chi_square_gof(samples, {b: float(p) for b, p in law.items()})
    assert result.pvalue > 0.001


@pytest.mark.statistical
def test_skeleton_kappa_matches_size_chain(rng):
    skeleton = [kappa_sample(5000, rng) for _ in range(1500)]
    chain = [size_run(5000, rng).kappa for _ in range(1500)]
    assert chi_square_two_sample(skeleton, chain).pvalue > 0.001
