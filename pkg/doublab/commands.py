"""Library entry points behind every CLI subcommand.

Each ``cmd_*`` takes an :class:`ExperimentConfig`, does its work through the
engines, oracles and verification procedures, writes a :class:`RunRecord`
under the experiment's output directory and returns it.
"""

import json
import logging
import time
from functools import partial
from pathlib import Path
from typing import Any

import numpy as np

from .chains.continuous import ct_run, rrt_height
from .chains.degree import degree_run
from .chains.profile import profile_run
from .chains.size import size_run
from .chains.skeleton import kappa_of_n, size_of_n, skeleton_path_past
from .chains.tagged import tagged_run
from .config import EngineType, ExperimentConfig, OracleKind, get_config, resolve_thresholds
from .errors import ResourceCapExceeded
from .oracles.enumerate import enumerate_exact
from .oracles.everywhere import inf_tree_exact_mean, inf_tree_lower_bound
from .oracles.fixed_point import fixed_point_check
from .oracles.moments import exact_moment, exact_size_distribution, m_k
from .oracles.statistic import exact_statistic_distribution
from .records import RunRecord, csv_columns, find_records
from .reporting import render_report
from .rng import RngStream
from .runner import run_replicates
from .trees.arena import grow, sample_node_heights, summarize
from .trees.everywhere import inf_grow
from .verify.procedures import PROCEDURES, resolve_tests

logger = logging.getLogger(__name__)

REPORT_NAME = "report.md"


def _fraction(x) -> str:
    return f"{x.numerator}/{x.denominator}"


def _lumped(hist: list[int] | tuple[int, ...], m: int) -> list[int]:
    head = [hist[i] if i < len(hist) else 0 for i in range(m)]
    return head + [sum(hist[m:])]


# ============================================================================
# simulate
# ============================================================================


def simulate_replicate(
    rng: RngStream,
    engine: EngineType,
    n: int,
    m: int,
    k: int,
    attach: str,
    cap: int,
) -> dict[str, Any]:
    """Raw outputs of one replicate of ``engine`` at ``n``; absent statistics are left out."""
    row: dict[str, Any] = {"n": n, "engine": engine.value}
    settings = get_config()

    if engine == EngineType.EXPLICIT:
        tree = grow(n, rng, cap=cap)
        summary = summarize(tree)
        row.update(B=summary.size_B, kappa=summary.kappa, H=summary.height_H)
        row.update({f"U_{i}": c for i, c in enumerate(_lumped(summary.degree_hist, m))})
        row.update({f"h_{j + 1}": h for j, h in enumerate(sample_node_heights(tree, k, rng))})
    elif engine == EngineType.SIZE:
        state = size_run(n, rng)
        row.update(B=state.B, kappa=state.kappa)
    elif engine == EngineType.DEGREE:
        state = degree_run(n, rng)
        row.update(B=state.B, kappa=state.kappa)
        row.update({f"U_{i}": c for i, c in enumerate(state.aggregated(m))})
    elif engine == EngineType.PROFILE:
        state = profile_run(n, rng)
        row.update(B=state.B, kappa=state.kappa, H=state.height)
    elif engine == EngineType.SKELETON:
        path = skeleton_path_past(n, rng)
        row.update(B=size_of_n(path, n), kappa=kappa_of_n(path, n))
    elif engine == EngineType.TAGGED:
        state = tagged_run(n, k, rng, attach=attach)
        row.update(B=state.B)
        row.update({f"h_{j + 1}": h for j, h in enumerate(state.heights)})
    elif engine == EngineType.CT:
        # n counts root rings here
        state = ct_run(rng, doublings=n, exact_cap=settings.ct_exact_cap)
        row.update(B=state.N - 1, kappa=state.D)
    elif engine == EngineType.RRT:
        row.update(B=n - 1, H=rrt_height(n, rng).height)
    elif engine == EngineType.EVERYWHERE:
        tree = inf_grow(n, rng, cap=cap)
        row.update(B=len(tree) - 1, H=max(tree.depth))
    return row


def _check_explicit(config: ExperimentConfig, node_cap: int) -> None:
    if config.engine != EngineType.EXPLICIT or config.cap is not None:
        return
    for n in config.n_values:
        worst = 2 ** (n + 1) - 1
        if worst > node_cap:
            raise ResourceCapExceeded(f"explicit tree at n={n} (worst case)", worst, node_cap)


def _means(rows: list[dict[str, Any]], column: str) -> float | None:
    values = [row[column] for row in rows if row.get(column) is not None]
    if not values:
        return None
    return float(np.mean(values))


def cmd_simulate(config: ExperimentConfig) -> RunRecord:
    """Run the configured engine for every n and write one CSV row per replicate."""
    settings = get_config()
    _check_explicit(config, settings.node_cap)
    cap = config.cap if config.cap is not None else settings.node_cap

    record = RunRecord(kind="simulate", config=config.to_dict(), columns=csv_columns(config.m, config.k))
    for index, n in enumerate(config.n_values):
        start = time.perf_counter()
        worker = partial(
            simulate_replicate, engine=config.engine, n=n, m=config.m, k=config.k, attach=config.attach, cap=cap
        )
        rows = run_replicates(
            worker, config.seed, config.replicates, config.parallelism, salt=(index,), label=f"{config.engine.value} n={n}"
        )
        for replicate, row in enumerate(rows):
            row["replicate"] = replicate
        record.rows.extend(rows)
        record.timings[f"n={n}"] = time.perf_counter() - start
        record.summary[str(n)] = {
            "replicates": len(rows),
            "mean_B": _means(rows, "B"),
            "mean_kappa": _means(rows, "kappa"),
            "mean_H": _means(rows, "H"),
        }
    record.write(config.resolved_out_dir())
    return record


# ============================================================================
# oracle
# ============================================================================


def _oracle_payload(config: ExperimentConfig) -> dict[str, Any]:
    kind = config.oracle
    if kind == OracleKind.MOMENTS:
        return {
            "m_k": {str(k): _fraction(m_k(k)) for k in range(1, config.k_max + 1)},
            "moments": {
                str(n): {str(k): str(exact_moment(n, k)) for k in range(1, config.k_max + 1)} for n in config.n_values
            },
            "mean_minus_2n": {str(n): str(exact_moment(n, 1) - 2 * n) for n in config.n_values},
        }
    if kind == OracleKind.SIZE:
        return {str(n): json.loads(exact_size_distribution(n, cap=config.cap).to_json()) for n in config.n_values}
    if kind == OracleKind.STATISTIC:
        return {
            str(n): json.loads(
                exact_statistic_distribution(n, config.chain, k=config.k, attach=config.attach, cap=config.cap).to_json()
            )
            for n in config.n_values
        }
    if kind == OracleKind.ENUMERATE:
        payload = {}
        for n in config.n_values:
            law = enumerate_exact(n, cap=config.cap).marginal(
                lambda s: (s.size_B, s.degree_hist, s.root_degree, s.height_hist, s.kappa)
            )
            payload[str(n)] = json.loads(law.to_json())
        return {"key": ["B", "degree_hist", "root_degree", "height_hist", "kappa"], "laws": payload}
    if kind == OracleKind.FIXED_POINT:
        rng = RngStream(config.seed)
        return {str(m): fixed_point_check(m, config.replicates, rng).to_dict() for m in range(2, config.m + 1)}
    # OracleKind.INF_TREE
    return {
        str(n): {"exact_mean": _fraction(inf_tree_exact_mean(n, cap=config.cap)), "lower_bound": inf_tree_lower_bound(n)}
        for n in config.n_values
    }


def cmd_oracle(config: ExperimentConfig) -> RunRecord:
    """Exact computation selected by ``config.oracle``, written as JSON with rational strings."""
    start = time.perf_counter()
    record = RunRecord(kind="oracle", config=config.to_dict())
    record.oracle = {"kind": config.oracle.value, "result": _oracle_payload(config)}
    record.timings["oracle"] = time.perf_counter() - start
    record.summary["oracle"] = config.oracle.value
    record.write(config.resolved_out_dir())
    return record


# ============================================================================
# verify
# ============================================================================


def cmd_verify(config: ExperimentConfig) -> RunRecord:
    """Run the selected verification procedures; ``record.passed`` is the gate."""
    names = resolve_tests(config.tests)
    thresholds = resolve_thresholds(config.thresholds)
    record = RunRecord(kind="verify", config=config.to_dict())
    for name in names:
        start = time.perf_counter()
        logger.info("verifying %s", name)
        report = PROCEDURES[name](seed=config.seed, thresholds=thresholds, parallelism=config.parallelism)
        record.timings[name] = time.perf_counter() - start
        record.reports.append(report.to_dict())
        record.summary[name] = "pass" if report.passed else "FAIL"
    record.write(config.resolved_out_dir())
    return record


# ============================================================================
# report
# ============================================================================


def cmd_report(run_dir: Path) -> Path:
    """Combine every record under ``run_dir`` into one markdown file there."""
    records = find_records(run_dir)
    path = run_dir / REPORT_NAME
    path.write_text(render_report(records), "utf-8")
    logger.info("report with %d records written to %s", len(records), path)
    return path
