"""Statistical tests used by the verification procedures."""

from collections import Counter
from collections.abc import Callable, Hashable, Iterable, Mapping
from dataclasses import dataclass

import numpy as np
from scipy import stats

from ..rng import RngStream

MIN_KS_SAMPLES = 20
MIN_EXPECTED = 5.0


@dataclass(frozen=True)
class StatResult:
    """A test statistic with its p-value and sample size."""

    statistic: float
    pvalue: float
    size: int


def ks_test(samples: Iterable[float], cdf: Callable | str = "norm") -> StatResult:
    """One-sample Kolmogorov-Smirnov distance with its asymptotic p-value."""
    data = np.asarray(list(samples), dtype=float)
    if data.size == 0:
        raise ValueError("ks_test needs samples")
    if data.size < MIN_KS_SAMPLES:
        raise ValueError(f"ks_test needs at least {MIN_KS_SAMPLES} samples, got {data.size}")
    res = stats.kstest(data, cdf, method="asymp")
    return StatResult(float(res.statistic), float(res.pvalue), int(data.size))


def ks_two_sample(a: Iterable[float], b: Iterable[float]) -> StatResult:
    x = np.asarray(list(a), dtype=float)
    y = np.asarray(list(b), dtype=float)
    res = stats.ks_2samp(x, y, method="asymp")
    return StatResult(float(res.statistic), float(res.pvalue), int(x.size + y.size))


def jitter(samples: Iterable[float], rng: RngStream, spacing: float = 1.0) -> np.ndarray:
    """Add an independent uniform on (-spacing/2, spacing/2) to lattice samples."""
    data = np.asarray(list(samples), dtype=float)
    return data + spacing * (rng.generator.random(data.size) - 0.5)


def _pool(expected: list[float], observed: list[float]) -> tuple[list[float], list[float]]:
    """Merge adjacent cells until every expected count reaches MIN_EXPECTED."""
    exp_out: list[float] = []
    obs_out: list[float] = []
    e_acc = o_acc = 0.0
    for e, o in zip(expected, observed):
        e_acc += e
        o_acc += o
        if e_acc >= MIN_EXPECTED:
            exp_out.append(e_acc)
            obs_out.append(o_acc)
            e_acc = o_acc = 0.0
    if e_acc or o_acc:
        if exp_out:
            exp_out[-1] += e_acc
            obs_out[-1] += o_acc
        else:
            exp_out.append(e_acc)
            obs_out.append(o_acc)
    return exp_out, obs_out


def chi_square_gof(samples: Iterable[Hashable], probabilities: Mapping[Hashable, float]) -> StatResult:
    """Goodness of fit of observed values against exact probabilities.

    Cells are ordered by key and pooled to expected counts of at least five;
    values outside the support fail the test outright.
    """
    counts = Counter(samples)
    total = sum(counts.values())
    if any(v not in probabilities for v in counts):
        return StatResult(float("inf"), 0.0, total)
    keys = sorted(probabilities)
    expected = [total * float(probabilities[k]) for k in keys]
    observed = [float(counts.get(k, 0)) for k in keys]
    expected, observed = _pool(expected, observed)
    if len(expected) < 2:
        return StatResult(0.0, 1.0, total)
    # renormalise against float rounding so both sides have equal totals
    scale = sum(observed) / sum(expected)
    res = stats.chisquare(observed, [e * scale for e in expected])
    return StatResult(float(res.statistic), float(res.pvalue), total)


def chi_square_two_sample(a: Iterable[Hashable], b: Iterable[Hashable]) -> StatResult:
    """Homogeneity of two samples of discrete values (pooled sparse cells)."""
    ca, cb = Counter(a), Counter(b)
    na, nb = sum(ca.values()), sum(cb.values())
    keys = sorted(set(ca) | set(cb))
    rows_a: list[float] = []
    rows_b: list[float] = []
    acc_a = acc_b = 0.0
    for k in keys:
        acc_a += ca.get(k, 0)
        acc_b += cb.get(k, 0)
        # smallest expected count in the merged cell
        if min(na, nb) * (acc_a + acc_b) / (na + nb) >= MIN_EXPECTED:
            rows_a.append(acc_a)
            rows_b.append(acc_b)
            acc_a = acc_b = 0.0
    if acc_a or acc_b:
        if rows_a:
            rows_a[-1] += acc_a
            rows_b[-1] += acc_b
        else:
            rows_a.append(acc_a)
            rows_b.append(acc_b)
    if len(rows_a) < 2:
        return StatResult(0.0, 1.0, na + nb)
    res = stats.chi2_contingency(np.array([rows_a, rows_b]))
    return StatResult(float(res.statistic), float(res.pvalue), na + nb)


def mean_ci(samples: Iterable[float], level: float = 0.95) -> tuple[float, float, float]:
    """Sample mean with a normal-approximation confidence interval."""
    data = np.asarray(list(samples), dtype=float)
    mean = float(data.mean())
    if data.size < 2:
        return mean, mean, mean
    half = float(stats.norm.ppf(0.5 + level / 2) * data.std(ddof=1) / np.sqrt(data.size))
    return mean, mean - half, mean + half


def correlation_ci(x: Iterable[float], y: Iterable[float], level: float = 0.95) -> tuple[float, float, float]:
    """Pearson correlation with a Fisher-z confidence interval."""
    a = np.asarray(list(x), dtype=float)
    b = np.asarray(list(y), dtype=float)
    if a.size < 4 or a.std() == 0 or b.std() == 0:
        return 0.0, -1.0, 1.0
    r = float(np.corrcoef(a, b)[0, 1])
    z = np.arctanh(np.clip(r, -0.999999, 0.999999))
    half = stats.norm.ppf(0.5 + level / 2) / np.sqrt(a.size - 3)
    return r, float(np.tanh(z - half)), float(np.tanh(z + half))
