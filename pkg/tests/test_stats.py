import numpy as np
import pytest

from doublab.verify import NormalizedSample, TestReport
from doublab.verify.report import truncated
from doublab.verify.stats import (
    chi_square_gof,
    chi_square_two_sample,
    correlation_ci,
    jitter,
    ks_test,
    mean_ci,
)


def test_ks_accepts_normal_sample(rng):
    result = ks_test(rng.generator.standard_normal(20_000))
    assert result.statistic < 0.02
    assert result.size == 20_000


def test_ks_rejects_constant_sample():
    assert ks_test([0.0] * 100).statistic >= 0.5


def test_ks_needs_enough_samples():
    with pytest.raises(ValueError):
        ks_test([0.1] * 19)


def test_chi_square_unseen_value_fails():
    result = chi_square_gof([0, 1, 7], {0: 0.5, 1: 0.5})
    assert result.pvalue == 0.0


def test_chi_square_exact_counts_pass():
    samples = [0] * 500 + [1] * 300 + [2] * 200
    assert chi_square_gof(samples, {0: 0.5, 1: 0.3, 2: 0.2}).pvalue > 0.99


def test_two_sample_detects_shift():
    same = chi_square_two_sample([0, 1] * 200, [1, 0] * 200)
    shifted = chi_square_two_sample([0] * 300 + [1] * 100, [0] * 100 + [1] * 300)
    assert same.pvalue > 0.9
    assert shifted.pvalue < 1e-6


def test_jitter_stays_in_cell(rng):
    lattice = np.arange(100, dtype=float)
    assert np.array_equal(np.round(jitter(lattice, rng)), lattice)


def test_mean_ci_brackets_mean():
    mean, low, high = mean_ci([1.0, 2.0, 3.0, 4.0])
    assert low < mean == 2.5 < high


def test_correlation_of_identical_samples(rng):
    x = rng.generator.standard_normal(200)
    r, low, _ = correlation_ci(x, x)
    assert r == pytest.approx(1.0)
    assert low > 0.99


def test_report_gates_only_gated_checks():
    report = TestReport("demo", sample_size=10)
    report.add("gated", 0.1, 0.2)
    report.add("informational", 5.0, 1.0, gated=False)
    assert report.passed
    report.add("nan", float("nan"), 1.0)
    assert not report.passed


def test_normalized_sample():
    assert NormalizedSample(raw=7.0, centering=4.0, scale=1.5).normalized == 2.0
    with pytest.raises(ValueError):
        NormalizedSample(raw=1.0, centering=0.0, scale=0.0)


def test_truncated_constant():
    assert truncated((1 + np.e) / (1 + np.log(2))) == "2.1960"
    assert truncated(np.e) == "2.7182"
