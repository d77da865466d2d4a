from fractions import Fraction

import numpy as np
import pytest

from doublab.oracles import fixed_point, fixed_point_check
from doublab.oracles.fixed_point import drift_matrix, zero_sum_vectors


def test_null_vector_at_two():
    fp = fixed_point(2)
    assert fp.v == (Fraction(1, 2), Fraction(1, 4), Fraction(1, 4))
    Av = fp.A.astype(object) @ np.array(fp.v, dtype=object)
    assert list(Av) == [0, 0, 0]


def test_quadratic_form_example():
    A = drift_matrix(2)
    x = np.array([0, 1, -1])
    assert int(x @ A @ x) == -4


def test_columns_conserve_mass():
    for m in (2, 5, 11):
        assert not drift_matrix(m).sum(axis=0).any()


def test_drift_matrix_needs_two():
    with pytest.raises(ValueError):
        drift_matrix(1)


def test_zero_sum_vectors(rng):
    X = zero_sum_vectors(6, 50, rng)
    assert X.shape == (50, 7)
    assert not X.sum(axis=1).any()


@pytest.mark.parametrize("m", [2, 3, 6, 12])
def test_check_passes(rng, m):
    report = fixed_point_check(m, 200, rng)
    assert report.null_vector_ok
    assert report.max_quadratic <= 0
    assert report.max_eigen_real < 1e-9
