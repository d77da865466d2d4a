"""One verification procedure per checkable claim about the doubling tree.

Every procedure is deterministic given its seed and thresholds, reads its
defaults from the matching section of ``defaults.toml`` and returns a
:class:`TestReport`.
"""

import logging
import math
from collections.abc import Callable
from fractions import Fraction
from functools import partial
from typing import Any

import numpy as np

from ..chains.continuous import ct_run, rrt_height
from ..chains.degree import degree_run
from ..chains.profile import profile_run
from ..chains.size import size_run
from ..chains.skeleton import kappa_sample, skeleton_run
from ..chains.tagged import tagged_run
from ..config import load_defaults
from ..errors import ConfigError, InvariantViolation
from ..oracles.enumerate import (
    degree_key,
    enumerate_exact,
    profile_key,
    size_key,
    tagged_heights_from_summaries,
)
from ..oracles.everywhere import inf_tree_exact_mean, inf_tree_lower_bound
from ..oracles.fixed_point import fixed_point_check
from ..oracles.moments import exact_size_distribution, float_moment, m_k
from ..oracles.statistic import exact_statistic_distribution, tagged_heights
from ..rng import RngStream
from ..runner import run_replicates
from ..trees.everywhere import inf_grow
from .report import NormalizedSample, TestReport, truncated
from .stats import (
    chi_square_gof,
    chi_square_two_sample,
    correlation_ci,
    jitter,
    ks_test,
    ks_two_sample,
    mean_ci,
)

logger = logging.getLogger(__name__)

LOG2 = math.log(2.0)
GROWTH = 1.0 + LOG2  # exponential growth rate of the size per doubling epoch
HEIGHT_LB_CONSTANT = (1.0 + math.e) / GROWTH
RRT_CONSTANT = math.e


def _section(name: str, thresholds: dict[str, dict[str, Any]] | None) -> dict[str, Any]:
    source = thresholds if thresholds is not None else load_defaults()
    return dict(source[name])


def _pick(value: Any, default: Any) -> Any:
    return default if value is None else value


def _metadata(seed: int, **extra: Any) -> dict[str, Any]:
    return {"seed": seed, **extra}


# ============================================================================
# Replicate workers (module level so they pickle)
# ============================================================================


def _size_sample(rng: RngStream, n: int) -> int:
    return size_run(n, rng).B


def _kappa_path(rng: RngStream, n: int, checkpoints: tuple[int, ...]) -> tuple[int, ...]:
    state = size_run(n, rng, log_doublings=True)
    return tuple(state.kappa_at(c) for c in checkpoints)


def _skeleton_kappa(rng: RngStream, n: int) -> int:
    return kappa_sample(n, rng)


def _skeleton_logs(rng: RngStream, k: int) -> tuple[float, float]:
    state = skeleton_run(k, rng)
    return state.log_s, state.log_C


def _sandwich_ok(rng: RngStream, k: int, rtol: float) -> bool:
    try:
        skeleton_run(k, rng, check_sandwich=True, rtol=rtol)
    except InvariantViolation as e:
        logger.warning("sandwich violated: %s", e)
        return False
    return True


def _degree_proportions(rng: RngStream, n: int, i_max: int) -> tuple[list[float], bool]:
    state = degree_run(n, rng)
    total_ok = sum(state.counts) == state.B + 1
    props = (state.proportions() + [0.0] * (i_max + 1))[: i_max + 1]
    return props, total_ok


def _pair_heights(rng: RngStream, n: int) -> tuple[int, int]:
    state = tagged_run(n, 2, rng, attach="tag")
    return state.heights[0], state.heights[1]


def _harmonic(rng: RngStream, n: int, checkpoints: tuple[int, ...]) -> tuple[float, float, dict[int, float]]:
    state = size_run(n, rng, track_clock=True, checkpoints=list(checkpoints))
    return state.harmonic, state.clock, state.harmonic_at


def _profile_height(rng: RngStream, n: int) -> int:
    return profile_run(n, rng).height


def _ct_doublings(rng: RngStream, doublings: int, window: int) -> tuple[bool, list[float]]:
    try:
        state = ct_run(rng, doublings=doublings)
    except InvariantViolation as e:
        logger.warning("continuous-time coupling broken: %s", e)
        return False, []
    return True, state.dell[-window:]


def _ct_time(rng: RngStream, t_max: float) -> tuple[float, int, int]:
    state = ct_run(rng, t_max=t_max)
    return math.log(state.N), state.D, state.height_lower_bound()


def _rrt(rng: RngStream, n: int) -> tuple[int, float]:
    result = rrt_height(n, rng)
    return result.height, result.mean_depth


def _inf_size(rng: RngStream, n: int) -> int:
    return len(inf_grow(n, rng))


def _last_reset(rng: RngStream, n: int) -> int:
    return tagged_run(n, 1, rng, attach="tag").last_reset[0]


# ============================================================================
# Procedures
# ============================================================================


def verify_moments(
    n: int | None = None,
    k_max: int | None = None,
    replicates: int | None = None,
    *,
    seed: int = 0,
    thresholds: dict | None = None,
    parallelism: int = 1,
) -> TestReport:
    """Monte Carlo moments of B_n / n against their limits m_k.

    Gated on the CI covering m_k and on the exact moment at n; the relative
    error of the Monte Carlo mean is reported only.
    """
    th = _section("moments", thresholds)
    n = _pick(n, th["n"])
    k_max = _pick(k_max, th["k_max"])
    replicates = _pick(replicates, th["replicates"])

    sizes = run_replicates(partial(_size_sample, n=n), seed, replicates, parallelism, salt=(1,), label="moments")
    ratios = np.array([b / n for b in sizes], dtype=float)

    report = TestReport("moments", replicates, metadata=_metadata(seed, n=n, replicates=replicates, k_max=k_max))
    report.add("E[B_n] - 2n (exact recursion)", float_moment(n, 1) - 2 * n, 0.0, "==", claim="E[B_n] = 2n")
    level = th["ci_level"]
    for k in range(1, k_max + 1):
        target = float(m_k(k))
        mc, lo, hi = mean_ci(ratios**k, level=level)
        finite = float_moment(n, k) / n**k
        report.add(f"m_{k} outside {level:g} CI", int(not lo <= target <= hi), 0, "==",
                   claim=f"moment limit m_{k} = {m_k(k)}")
        report.add(f"m_{k} exact relative error at n", abs(finite - target) / target, th["exact_rel_tol"], "<=",
                   claim=f"E[B_n^{k}] / n^{k} -> m_{k}")
        tol = th.get(f"rel_tol_{k}", th[f"rel_tol_{min(k, 4)}"])
        report.add(f"m_{k} relative error", abs(mc - target) / target, tol, "<=", gated=False,
                   claim=f"moment limit m_{k} = {m_k(k)}")
        report.notes.append(
            f"k={k}: MC {mc:.5g} ({level:g} CI {lo:.5g}..{hi:.5g}), exact at n {finite:.5g}, limit {target:.5g}"
        )
    return report


def verify_size_oracle(
    n: int | None = None,
    replicates: int | None = None,
    *,
    seed: int = 0,
    thresholds: dict | None = None,
    parallelism: int = 1,
) -> TestReport:
    """Empirical law of B_n against the exact law."""
    th = _section("size_oracle", thresholds)
    n = _pick(n, th["n"])
    replicates = _pick(replicates, th["replicates"])

    exact = exact_size_distribution(n)
    probs = {b: float(p) for b, p in exact.items()}
    sizes = run_replicates(partial(_size_sample, n=n), seed, replicates, parallelism, salt=(2,), label="size oracle")
    gof = chi_square_gof(sizes, probs)

    report = TestReport("size_oracle", replicates, metadata=_metadata(seed, n=n, replicates=replicates))
    report.add("chi-square p-value", gof.pvalue, th["chi2_p_min"], ">", claim="B_n law equals the exact oracle")
    report.add("exact mean - 2n", float(exact.mean() - 2 * n), 0.0, "==", claim="E[B_n] = 2n")
    report.notes.append(f"support size {len(exact)}, chi-square {gof.statistic:.4g}")
    return report


def verify_kappa_clt(
    n: int | None = None,
    replicates: int | None = None,
    skeleton_replicates: int | None = None,
    *,
    seed: int = 0,
    thresholds: dict | None = None,
    parallelism: int = 1,
) -> TestReport:
    """Number of doublings: growth in log n, Gaussian fluctuations, and agreement with the skeleton.

    The centering ``log n / (1 + log 2)`` holds up to an additive constant,
    so the mean is checked through its slope between ``n / 100`` and ``n``
    on the same trajectories, and the shape through a KS test centred on the
    sample mean at the theoretical scale.
    """
    th = _section("kappa_clt", thresholds)
    n = _pick(n, th["n"])
    replicates = _pick(replicates, th["replicates"])
    skeleton_replicates = _pick(skeleton_replicates, th["skeleton_replicates"])
    if n < 100:
        raise ConfigError("kappa_clt needs n >= 100")
    checkpoints = (n // 100, n // 10, n)

    paths = run_replicates(
        partial(_kappa_path, n=n, checkpoints=checkpoints), seed, replicates, parallelism, salt=(3,), label="kappa"
    )
    from_skeleton = run_replicates(
        partial(_skeleton_kappa, n=n), seed, skeleton_replicates, parallelism, salt=(4,), label="kappa (skeleton)"
    )
    kappas = [path[-1] for path in paths]
    means = [float(np.mean([path[i] for path in paths])) for i in range(len(checkpoints))]

    log_n = math.log(n)
    centering = log_n / GROWTH
    scale = math.sqrt(log_n) / GROWTH**1.5
    mean = means[-1]
    slope = (means[-1] - means[0]) / math.log(checkpoints[-1] / checkpoints[0])
    smeared = jitter(kappas, RngStream.for_replicate(seed, 0, 5))
    normalized = [NormalizedSample(x, mean, scale).normalized for x in smeared]
    ks = ks_test(normalized)
    same_law = chi_square_two_sample(kappas, from_skeleton)

    report = TestReport(
        "kappa_clt",
        replicates,
        metadata=_metadata(seed, n=n, replicates=replicates, centering=centering, scale=scale),
    )
    report.add("slope of mean kappa in log n, relative error", abs(slope * GROWTH - 1.0), th["slope_rel_tol"], "<=",
               claim="E[kappa(n)] grows like log n / (1 + log 2)")
    report.add("|mean kappa - log n / (1 + log 2)|", abs(mean - centering), th["offset_max"], "<=",
               claim="kappa(n) - log n / (1 + log 2) stays bounded")
    report.add("KS distance (centred on sample mean, jittered)", ks.statistic, th["ks_max"], "<",
               claim="kappa(n) Gaussian at scale sqrt(log n) / (1 + log 2)^1.5")
    report.add("size chain vs skeleton chi-square p-value", same_law.pvalue, th["chi2_p_min"], ">",
               claim="size chain and skeleton give the same kappa law")
    report.add("mean kappa / log n", mean / log_n, 1.0 / GROWTH, ">=", gated=False,
               claim="kappa(n) / log n -> 1 / (1 + log 2)")
    report.notes.append(
        "checkpoint means: "
        + ", ".join(f"n={c}: {m:.4f} (offset {m - math.log(c) / GROWTH:+.4f})" for c, m in zip(checkpoints, means))
    )
    report.notes.append(f"sample sd {float(np.std(kappas, ddof=1)):.4f}, theoretical scale {scale:.4f}")
    return report


def verify_skeleton_clt(
    k: int | None = None,
    replicates: int | None = None,
    *,
    seed: int = 0,
    thresholds: dict | None = None,
    parallelism: int = 1,
) -> TestReport:
    """Gaussian limits of log s_k and log C_k, their vanishing difference, and the sandwich bounds."""
    th = _section("skeleton_clt", thresholds)
    k = _pick(k, th["k"])
    replicates = _pick(replicates, th["replicates"])

    logs = run_replicates(partial(_skeleton_logs, k=k), seed, replicates, parallelism, salt=(6,), label="skeleton")
    log_s = np.array([a for a, _ in logs])
    log_C = np.array([b for _, b in logs])
    root_k = math.sqrt(k)
    z_s = (log_s - GROWTH * k) / root_k
    z_C = (log_C - GROWTH * k) / root_k
    ks_s = ks_test(z_s)
    ks_C = ks_test(z_C)
    diff_sd = float(np.std((log_s - log_C) / root_k, ddof=1))

    sandwich = run_replicates(
        partial(_sandwich_ok, k=th["sandwich_k"], rtol=th["sandwich_rtol"]),
        seed,
        th["sandwich_replicates"],
        parallelism,
        salt=(7,),
        label="sandwich",
    )

    report = TestReport("skeleton_clt", replicates, metadata=_metadata(seed, k=k, replicates=replicates))
    report.add("KS distance log s_k", ks_s.statistic, th["ks_max"], "<",
               claim="(log s_k - (1 + log 2) k) / sqrt(k) is standard normal")
    report.add("KS distance log C_k", ks_C.statistic, th["ks_max"], "<",
               claim="(log C_k - (1 + log 2) k) / sqrt(k) is standard normal")
    report.add("sd of (log s_k - log C_k) / sqrt(k)", diff_sd, th["diff_sd_max"], "<",
               claim="joint limit has equal components")
    report.add("sandwich violations", sandwich.count(False), 0, "==",
               claim="2^k prod 1/(1-U_i) <= C_k <= 2^(k+1) prod 1/(1-U_i)")
    return report


def verify_degree_limit(
    n: int | None = None,
    replicates: int | None = None,
    i_max: int | None = None,
    *,
    seed: int = 0,
    thresholds: dict | None = None,
    parallelism: int = 1,
) -> TestReport:
    """Proportion of nodes with i children against 2^-(i+1)."""
    th = _section("degree_limit", thresholds)
    n = _pick(n, th["n"])
    replicates = _pick(replicates, th["replicates"])
    i_max = _pick(i_max, th["i_max"])

    results = run_replicates(
        partial(_degree_proportions, n=n, i_max=i_max), seed, replicates, parallelism, salt=(8,), label="degrees"
    )
    props = np.array([p for p, _ in results])
    report = TestReport("degree_limit", replicates, metadata=_metadata(seed, n=n, replicates=replicates))
    for i in range(i_max + 1):
        target = 2.0 ** -(i + 1)
        report.add(f"degree i={i}: |mean - {target:g}|", abs(float(props[:, i].mean()) - target), th["abs_tol"], "<",
                   claim=f"degree i={i}: target {target:g}")
    report.add("replicates with counts not summing to B+1", sum(not ok for _, ok in results), 0, "==",
               claim="sum_i U_i = B + 1")
    return report


def verify_profile(
    n: int | None = None,
    replicates: int | None = None,
    *,
    seed: int = 0,
    thresholds: dict | None = None,
    parallelism: int = 1,
) -> TestReport:
    """Heights of two tagged nodes: centering, Gaussian difference and shared shift."""
    th = _section("profile", thresholds)
    n = _pick(n, th["n"])
    replicates = _pick(replicates, th["replicates"])

    pairs = run_replicates(partial(_pair_heights, n=n), seed, replicates, parallelism, salt=(9,), label="profile")
    u = np.array([a for a, _ in pairs], dtype=float)
    v = np.array([b for _, b in pairs], dtype=float)
    log_n = math.log(n)
    centering = 2.0 * log_n / GROWTH
    mean = float(np.concatenate([u, v]).mean())
    spread = math.sqrt(2.0 * log_n / GROWTH)
    diffs = jitter(u - v, RngStream.for_replicate(seed, 0, 10)) / spread
    ks = ks_test(diffs)
    r, lo, hi = correlation_ci(u, v)

    report = TestReport("profile", replicates, metadata=_metadata(seed, n=n, replicates=replicates, centering=centering))
    report.add("mean height relative error", abs(mean - centering) / centering, th["mean_rel_tol"], "<=",
               claim="tagged height centred at 2 log n / (1 + log 2)")
    report.add("KS distance of height difference", ks.statistic, th["ks_max"], "<",
               claim="height difference Gaussian with variance 2 log n / (1 + log 2)")
    report.add("pair correlation CI lower end", lo, 0.0, ">", gated=bool(th["gate_correlation"]),
               claim="shared random shift makes pair heights correlated")
    report.notes.append(f"pair correlation {r:.4f} (95% CI {lo:.4f}..{hi:.4f})")
    return report


def verify_sum_reciprocal(
    n: int | None = None,
    replicates: int | None = None,
    *,
    seed: int = 0,
    thresholds: dict | None = None,
    parallelism: int = 1,
) -> TestReport:
    """sum_i 1/(B_i + 1) along each trajectory against log n / (1 + log 2).

    The sum carries the same additive constant as the doubling count, so the
    gates are the slope of the checkpoint means in log n and a relative error
    that shrinks from the first checkpoint to the last.
    """
    th = _section("sum_reciprocal", thresholds)
    n = _pick(n, th["n"])
    replicates = _pick(replicates, th["replicates"])
    if n < 100:
        raise ConfigError("sum_reciprocal needs n >= 100")
    checkpoints = (n // 100, n // 10, n)

    runs = run_replicates(
        partial(_harmonic, n=n, checkpoints=checkpoints), seed, replicates, parallelism, salt=(11,), label="harmonic"
    )
    targets = [math.log(c) / GROWTH for c in checkpoints]
    means = [float(np.mean([at[c] for _, _, at in runs])) for c in checkpoints]
    rel_errors = [abs(m - t) / t for m, t in zip(means, targets)]
    slope = (means[-1] - means[0]) / math.log(checkpoints[-1] / checkpoints[0])
    target = targets[-1]
    close = [abs(h - target) / target <= th["rel_tol"] for h, _, _ in runs]
    clock_gap = float(np.mean([abs(clock - h) for h, clock, _ in runs]))

    report = TestReport("sum_reciprocal", replicates, metadata=_metadata(seed, n=n, replicates=replicates, target=target))
    report.add("slope of mean sum in log n, relative error", abs(slope * GROWTH - 1.0), th["slope_rel_tol"], "<=",
               claim="sum 1/(B_i + 1) grows like log n / (1 + log 2)")
    report.add(f"relative error at n={checkpoints[-1]} minus at n={checkpoints[0]}", rel_errors[-1] - rel_errors[0],
               0.0, "<", claim="sum 1/(B_i + 1) / log n -> 1 / (1 + log 2)")
    report.add("fraction within tolerance", sum(close) / len(close), th["min_fraction"], ">=", gated=False,
               claim="sum 1/(B_i + 1) ~ log n / (1 + log 2)")
    report.add("mean |ring clock - harmonic sum|", clock_gap, 1.0, "<", gated=False,
               claim="ring time t_n stays close to the harmonic sum")
    report.notes.append(
        "checkpoint means: "
        + ", ".join(f"n={c}: {m:.4f} (target {t:.4f})" for c, m, t in zip(checkpoints, means, targets))
    )
    return report


def verify_height_lb(
    n: int | None = None,
    replicates: int | None = None,
    *,
    seed: int = 0,
    thresholds: dict | None = None,
    parallelism: int = 1,
) -> TestReport:
    """Height lower bound from the profile chain, plus the continuous-time embedding checks."""
    th = _section("height_lb", thresholds)
    n = _pick(n, th["n"])
    replicates = _pick(replicates, th["replicates"])

    heights = run_replicates(partial(_profile_height, n=n), seed, replicates, parallelism, salt=(12,), label="heights")
    ratios = [h / math.log(n) for h in heights]

    ct = run_replicates(
        partial(_ct_doublings, doublings=th["ct_doublings"], window=th["dell_window"]),
        seed,
        th["ct_runs"],
        parallelism,
        salt=(13,),
        label="continuous time (doublings)",
    )
    late = [d for ok, window in ct for d in window]
    dell_mean = float(np.mean(late)) if late else float("nan")

    timed = run_replicates(
        partial(_ct_time, t_max=th["ct_time"]), seed, th["ct_runs"], parallelism, salt=(14,), label="continuous time (t)"
    )
    t = th["ct_time"]
    growth = float(np.mean([log_n / t for log_n, _, _ in timed]))
    doublings = np.array([d for _, d, _ in timed], dtype=float)

    report = TestReport("height_lb", replicates, metadata=_metadata(seed, n=n, replicates=replicates))
    report.add("min H_n / log n", min(ratios), th["ratio_min"], ">=",
               claim=f"height LB constant {truncated(HEIGHT_LB_CONSTANT)}")
    report.add("runs breaking Y(t + ell) = N(t)", sum(not ok for ok, _ in ct), 0, "==",
               claim="Yule coupling identity at every event")
    report.add("late warp increment relative error", abs(dell_mean - LOG2) / LOG2, th["dell_rel_tol"], "<",
               claim="warp increments tend to log 2")
    report.add("log N(t) / t relative error", abs(growth - GROWTH) / GROWTH, th["log_growth_rel_tol"], "<",
               claim="log N(t) ~ (1 + log 2) t")
    report.add("mean D(t) / t", float(doublings.mean()) / t, 1.0, ">=", gated=False,
               claim="D(t) is Poisson(t)")
    report.notes.append(
        f"mean H_n / log n {np.mean(ratios):.4f}; D(t) mean {doublings.mean():.3f}, var {doublings.var(ddof=1):.3f} "
        f"at t={t}; mean D(t) + subtree height {np.mean([h for _, _, h in timed]):.3f}"
    )
    return report


def verify_rrt(
    n: int | None = None,
    replicates: int | None = None,
    *,
    seed: int = 0,
    thresholds: dict | None = None,
    parallelism: int = 1,
) -> TestReport:
    """Random recursive tree baseline: height / log n near e."""
    th = _section("rrt", thresholds)
    n = _pick(n, th["n"])
    replicates = _pick(replicates, th["replicates"])

    results = run_replicates(partial(_rrt, n=n), seed, replicates, parallelism, salt=(15,), label="rrt")
    log_n = math.log(n)
    ratio = float(np.mean([h for h, _ in results])) / log_n
    depth_ratio = float(np.mean([d for _, d in results])) / log_n

    report = TestReport("rrt", replicates, metadata=_metadata(seed, n=n, replicates=replicates))
    report.add("mean height / log n (low)", ratio, th["ratio_low"], ">=", claim=f"RRT height constant e = {RRT_CONSTANT:.4f}")
    report.add("mean height / log n (high)", ratio, th["ratio_high"], "<=", claim=f"RRT height constant e = {RRT_CONSTANT:.4f}")
    report.add("mean depth / log n", depth_ratio, 1.0, "<=", gated=False, claim="RRT typical depth ~ log n")
    return report


def verify_inf_tree(
    n_values: list[int] | None = None,
    replicates: int | None = None,
    *,
    seed: int = 0,
    thresholds: dict | None = None,
    parallelism: int = 1,
) -> TestReport:
    """Double-everywhere tree: exact small-n mean, lower bound and superlinear growth."""
    th = _section("inf_tree", thresholds)
    n_values = sorted(_pick(n_values, th["n_values"]))
    replicates = _pick(replicates, th["replicates"])

    report = TestReport("inf_tree", replicates, metadata=_metadata(seed, n_values=n_values, replicates=replicates))
    exact_2 = inf_tree_exact_mean(2)
    report.add("exact E[size] at n=2 minus 17/3", float(exact_2 - Fraction(17, 3)), 0.0, "==",
               claim="E[size] = 17/3 after two steps")
    small = run_replicates(partial(_inf_size, n=2), seed, 2000, parallelism, salt=(16,), label="inf tree n=2")
    mean2, lo2, hi2 = mean_ci(small, level=0.999)
    report.add("n=2 simulation mean outside 99.9% CI of 17/3", int(not lo2 <= 17 / 3 <= hi2), 0, "==",
               claim="simulation matches exact mean")

    means = {}
    for index, n in enumerate(n_values):
        sizes = run_replicates(
            partial(_inf_size, n=n), seed, replicates, parallelism, salt=(17, index), label=f"inf tree n={n}"
        )
        means[n] = float(np.mean(sizes))
        bound = inf_tree_lower_bound(n)
        report.add(f"n={n}: mean size / lower bound", means[n] / bound, 1.0, ">=",
                   claim="E[size] >= (n-1)/2 log2((n-1)/e)")
        report.add(f"n={n}: sizes above 2^(n+1) - 1", sum(s > 2 ** (n + 1) - 1 for s in sizes), 0, "==",
                   claim="growth cap")
    for a, b in zip(n_values, n_values[1:]):
        if b == 2 * a:
            report.add(f"mean({b}) / mean({a})", means[b] / means[a], th["growth_ratio_min"], ">",
                       claim="superlinear growth")
    return report


def verify_fixed_point(
    m_max: int | None = None,
    trials: int | None = None,
    *,
    seed: int = 0,
    thresholds: dict | None = None,
    parallelism: int = 1,
) -> TestReport:
    """A v = 0 and <x, Ax> <= 0 on zero-sum vectors, exactly, for every m up to m_max."""
    th = _section("fixed_point", thresholds)
    m_max = _pick(m_max, th["m_max"])
    trials = _pick(trials, th["trials"])

    failures = 0
    worst_quad = None
    worst_eig = 0.0
    for m in range(2, m_max + 1):
        try:
            result = fixed_point_check(m, trials, RngStream.for_replicate(seed, m, 18))
        except InvariantViolation as e:
            logger.error("fixed point check failed at m=%d: %s", m, e)
            failures += 1
            continue
        worst_quad = result.max_quadratic if worst_quad is None else max(worst_quad, result.max_quadratic)
        worst_eig = max(worst_eig, abs(result.max_eigen_real))

    report = TestReport("fixed_point", trials * (m_max - 1), metadata=_metadata(seed, m_max=m_max, trials=trials))
    report.add("failed m values", failures, 0, "==", claim="A v = 0 and <x, Ax> <= 0 on zero-sum x")
    report.add("max <x, Ax>", worst_quad if worst_quad is not None else 0, 0, "<=", claim="<x, Ax> <= 0")
    report.add("|largest eigenvalue real part|", worst_eig, 1e-8, "<", gated=False, claim="largest eigenvalue of A is 0")
    return report


def verify_reset_times(
    n_small: int | None = None,
    n_large: int | None = None,
    replicates: int | None = None,
    *,
    seed: int = 0,
    thresholds: dict | None = None,
    parallelism: int = 1,
) -> TestReport:
    """Last reset time of a tagged node has the same law at two horizons."""
    th = _section("reset_times", thresholds)
    n_small = _pick(n_small, th["n_small"])
    n_large = _pick(n_large, th["n_large"])
    replicates = _pick(replicates, th["replicates"])

    small = run_replicates(partial(_last_reset, n=n_small), seed, replicates, parallelism, salt=(19,), label="resets")
    large = run_replicates(partial(_last_reset, n=n_large), seed, replicates, parallelism, salt=(20,), label="resets")
    ks = ks_two_sample(small, large)

    report = TestReport("reset_times", 2 * replicates, metadata=_metadata(seed, n_small=n_small, n_large=n_large))
    report.add("two-sample KS p-value", ks.pvalue, th["ks_p_min"], ">", claim="reset times are almost surely finite")
    report.notes.append(f"mean last reset {np.mean(small):.2f} (n={n_small}), {np.mean(large):.2f} (n={n_large})")
    return report


def verify_oracle_equivalence(
    n_max: int | None = None,
    *,
    seed: int = 0,
    thresholds: dict | None = None,
    parallelism: int = 1,
) -> TestReport:
    """Chain laws equal the laws extracted from enumerated explicit trees."""
    th = _section("oracle_equivalence", thresholds)
    n_max = _pick(n_max, th["n_max"])
    k3_max = min(n_max, th["tagged_k3_n_max"])

    mismatches: list[str] = []
    compared = 0
    for n in range(n_max + 1):
        summaries = enumerate_exact(n)
        pairs = [
            ("size", summaries.marginal(size_key), exact_statistic_distribution(n, "size")),
            ("degree", summaries.marginal(degree_key), exact_statistic_distribution(n, "degree")),
            ("profile", summaries.marginal(profile_key), exact_statistic_distribution(n, "profile")),
        ]
        for k in (1, 2, 3):
            if k == 3 and n > k3_max:
                continue
            chain = tagged_heights(exact_statistic_distribution(n, "tagged", k=k, attach="uniform"))
            pairs.append((f"tagged k={k}", tagged_heights_from_summaries(summaries, k), chain))
        for name, expected, got in pairs:
            compared += 1
            if expected != got:
                mismatches.append(f"{name} at n={n}")

    report = TestReport("oracle_equivalence", compared, metadata=_metadata(seed, n_max=n_max))
    report.add("mismatched laws", len(mismatches), 0, "==", claim="chain laws equal enumeration")
    report.notes.extend(mismatches)
    return report


PROCEDURES: dict[str, Callable[..., TestReport]] = {
    "oracle_equivalence": verify_oracle_equivalence,
    "fixed_point": verify_fixed_point,
    "moments": verify_moments,
    "size_oracle": verify_size_oracle,
    "kappa_clt": verify_kappa_clt,
    "skeleton_clt": verify_skeleton_clt,
    "degree_limit": verify_degree_limit,
    "profile": verify_profile,
    "sum_reciprocal": verify_sum_reciprocal,
    "height_lb": verify_height_lb,
    "rrt": verify_rrt,
    "inf_tree": verify_inf_tree,
    "reset_times": verify_reset_times,
}


def resolve_tests(names: list[str]) -> list[str]:
    """Expand ``all`` and reject unknown names."""
    if not names or "all" in names:
        return list(PROCEDURES)
    unknown = [name for name in names if name not in PROCEDURES]
    if unknown:
        raise ConfigError(f"Unknown test(s): {', '.join(unknown)}. Choose from {', '.join(PROCEDURES)}")
    return list(names)
