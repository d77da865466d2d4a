import pickle
from functools import partial

import pytest

from doublab.errors import ResourceCapExceeded
from doublab.runner import run_replicates
from doublab.trees import grow
from doublab.verify.procedures import _size_sample


def _first_draw(rng):
    return rng.below(10**9)


def test_results_are_in_replicate_order():
    results = run_replicates(_first_draw, master=5, count=6)
    again = run_replicates(_first_draw, master=5, count=6)
    assert results == again
    assert len(set(results)) == 6


def test_salt_changes_streams():
    assert run_replicates(_first_draw, 5, 3, salt=(1,)) != run_replicates(_first_draw, 5, 3, salt=(2,))


def test_parallel_matches_serial():
    fn = partial(_size_sample, n=300)
    assert run_replicates(fn, 9, 24, parallelism=2) == run_replicates(fn, 9, 24)


def test_cap_error_survives_pickling():
    error = pickle.loads(pickle.dumps(ResourceCapExceeded("node count", 41, 20)))
    assert (error.what, error.value, error.cap) == ("node count", 41, 20)
    assert error.exit_code == 3
    assert str(error) == "node count would reach 41, above the cap of 20"


def test_cap_error_crosses_worker_processes():
    # B_n >= n, so every replicate passes a cap of 50 at n = 60
    with pytest.raises(ResourceCapExceeded) as excinfo:
        run_replicates(partial(grow, 60, cap=50), 1, 4, parallelism=2)
    assert excinfo.value.cap == 50
