import math

import pytest

from doublab.chains import CTState, ct_advance, ct_run, rrt_height
from doublab.errors import InvariantViolation


def test_time_horizon_is_exact(rng):
    state = ct_run(rng, t_max=2.5)
    assert state.t == 2.5
    state.check_coupling()
    assert state.N >= 2 ** (state.D + 1) - 1


def test_stops_at_requested_doublings(rng):
    state = ct_run(rng, doublings=6)
    assert state.D == 6
    assert len(state.dell) == 6
    assert state.ell == pytest.approx(sum(state.dell))


def test_height_bound_tracks_first_root(rng):
    state = ct_run(rng, doublings=8)
    assert state.S_height < state.S_size
    assert state.height_lower_bound() == state.D + state.S_height


def test_coupling_violation_is_reported():
    state = CTState(N=5, Y_check=4)
    with pytest.raises(InvariantViolation):
        state.check_coupling()


def test_coupling_compares_yule_clock_with_warped_time():
    state = CTState(t=1.0, ell=0.5, Y_time=1.5)
    state.check_coupling()
    state.ell = 0.4
    with pytest.raises(InvariantViolation):
        state.check_coupling()


def test_yule_clock_runs_ahead_by_the_warp(rng):
    state = ct_run(rng, doublings=5)
    assert state.Y_check == state.N
    assert state.Y_time == pytest.approx(state.t + state.ell)
    assert state.Y_time > state.t


def test_ct_run_needs_a_stop():
    with pytest.raises(ValueError):
        ct_run(None)


def test_advance_respects_horizon(rng):
    state = CTState()
    ct_advance(state, rng, t_max=0.0)
    assert (state.t, state.N, state.Y_time) == (0.0, 1, 0.0)


def test_leap_mode_beyond_cap(rng):
    state = ct_run(rng, doublings=40, exact_cap=50)
    assert state.S_frozen and not state.exact
    assert state.D == 40
    assert state.Y_check == state.N
    assert state.Y_time == pytest.approx(state.t + state.ell)
    late = state.dell[-10:]
    assert all(abs(d - math.log(2)) < 0.01 for d in late)


@pytest.mark.statistical
def test_root_rings_are_poisson(rng):
    counts = [ct_run(rng, t_max=3.0).D for _ in range(400)]
    mean = sum(counts) / len(counts)
    var = sum((c - mean) ** 2 for c in counts) / (len(counts) - 1)
    assert mean == pytest.approx(3.0, abs=0.35)
    assert var == pytest.approx(3.0, rel=0.3)


def test_rrt_small(rng):
    assert rrt_height(1, rng).height == 0
    two = rrt_height(2, rng)
    assert (two.height, two.mean_depth) == (1, 0.5)
    with pytest.raises(ValueError):
        rrt_height(0, rng)


@pytest.mark.statistical
def test_rrt_height_and_depth(rng):
    n = 100_000
    result = rrt_height(n, rng)
    assert 2.0 < result.height / math.log(n) < 3.2
    # mean depth is H_n - 1
    expected = sum(1 / i for i in range(2, n + 1))
    assert result.mean_depth == pytest.approx(expected, abs=1.5)
