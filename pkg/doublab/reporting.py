"""Markdown summary of run records against the model's limiting constants."""

import math
from collections import defaultdict
from typing import Any

from .oracles.moments import m_k
from .records import RunRecord
from .verify.procedures import GROWTH, HEIGHT_LB_CONSTANT, LOG2
from .verify.report import truncated

DEGREE_ROWS = 4


def _num(value: Any) -> float | None:
    if value is None or value == "":
        return None
    return float(value)


def _table(header: list[str], rows: list[list[str]]) -> list[str]:
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    lines.extend("| " + " | ".join(row) + " |" for row in rows)
    return lines


def constants_section() -> list[str]:
    """Reference values every empirical column is compared to."""
    rows = [[f"moment limit m_{k}", f"{float(m_k(k)):.4f}", f"E[(B_n/n)^{k}] -> {m_k(k)}"] for k in range(1, 5)]
    rows += [
        [f"degree i={i}: target {2.0 ** -(i + 1):g}", f"{2.0 ** -(i + 1):.4f}", "U_i / |tree| -> 2^-(i+1)"]
        for i in range(DEGREE_ROWS)
    ]
    rows += [
        ["doublings per log n", f"{1 / GROWTH:.4f}", "kappa(n) / log n -> 1/(1 + log 2)"],
        ["tagged height per log n", f"{2 / GROWTH:.4f}", "|u_n| / log n -> 2/(1 + log 2)"],
        [
            f"height LB constant {truncated(HEIGHT_LB_CONSTANT)}",
            truncated(HEIGHT_LB_CONSTANT),
            "H_n >= (1 + e)/(1 + log 2) log n",
        ],
        ["RRT height constant", f"{math.e:.4f}", "h(n) / log n -> e"],
        ["warp increment", f"{LOG2:.4f}", "late warp increments -> log 2"],
    ]
    return ["## Reference constants", "", *_table(["quantity", "value", "statement"], rows), ""]


def _simulate_section(record: RunRecord) -> list[str]:
    engine = record.config.get("engine", "?")
    by_n: dict[int, list[dict[str, Any]]] = defaultdict(list)
    for row in record.rows:
        by_n[int(row["n"])].append(row)

    rows = []
    for n, group in sorted(by_n.items()):
        log_n = math.log(n) if n > 1 else float("nan")
        sizes = [b for b in (_num(r.get("B")) for r in group) if b is not None]
        if sizes and engine not in ("ct", "rrt", "everywhere"):
            rows.append([f"n={n}", "mean B_n / n", f"{sum(sizes) / len(sizes) / n:.4f}", "m_1 = 2"])
        kappas = [x for x in (_num(r.get("kappa")) for r in group) if x is not None]
        if kappas and n > 1 and engine != "ct":
            rows.append([f"n={n}", "mean kappa / log n", f"{sum(kappas) / len(kappas) / log_n:.4f}",
                         f"1/(1 + log 2) = {1 / GROWTH:.4f}"])
        heights = [x for x in (_num(r.get("H")) for r in group) if x is not None]
        if heights and n > 1:
            target = f"e = {math.e:.4f}" if engine == "rrt" else f"height LB constant {truncated(HEIGHT_LB_CONSTANT)}"
            rows.append([f"n={n}", "mean H / log n", f"{sum(heights) / len(heights) / log_n:.4f}", target])
        for i in range(DEGREE_ROWS):
            column = f"U_{i}"
            props = [
                _num(r[column]) / (_num(r["B"]) + 1)
                for r in group
                if _num(r.get(column)) is not None and _num(r.get("B")) is not None
            ]
            if props:
                rows.append([f"n={n}", f"mean U_{i} / |tree|", f"{sum(props) / len(props):.4f}",
                             f"degree i={i}: target {2.0 ** -(i + 1):g}"])
    lines = [f"## simulate: {record.config.get('experiment')} ({engine})", ""]
    if rows:
        lines += _table(["n", "statistic", "empirical", "target"], rows)
    else:
        lines.append("No statistics with a reference constant.")
    return [*lines, ""]


def _verify_section(record: RunRecord) -> list[str]:
    lines = [f"## verify: {record.config.get('experiment')}", ""]
    for report in record.reports:
        status = "PASS" if report["passed"] else "FAIL"
        lines += [f"### {report['name']}: {status} (sample size {report['sample_size']})", ""]
        rows = [
            [
                c["claim"] or c["name"],
                c["name"],
                _fmt(c["value"]),
                f"{c['comparison']} {_fmt(c['threshold'])}",
                "yes" if c["gated"] else "no",
                "yes" if c["ok"] else "no",
            ]
            for c in report["checks"]
        ]
        lines += _table(["claim", "check", "value", "threshold", "gated", "ok"], rows)
        lines += [f"- {note}" for note in report.get("notes", [])]
        lines.append("")
    return lines


def _oracle_section(record: RunRecord) -> list[str]:
    lines = [f"## oracle: {record.config.get('experiment')} ({record.config.get('oracle')})", ""]
    result = (record.oracle or {}).get("result", {})
    if record.config.get("oracle") == "moments":
        rows = [[f"m_{k}", value, f"{float(m_k(int(k))):.6f}"] for k, value in result.get("m_k", {}).items()]
        lines += _table(["limit", "exact", "float"], rows)
        zeros = result.get("mean_minus_2n", {})
        lines.append("")
        lines.append(f"E[B_n] - 2n is zero for every n: {all(v == '0' for v in zeros.values())}")
    else:
        lines.append(f"Exact payload in `oracle.json` ({len(result)} entries).")
    return [*lines, ""]


def _fmt(x: Any) -> str:
    if isinstance(x, float):
        return f"{x:.6g}"
    return str(x)


def render_report(records: list[RunRecord]) -> str:
    """One markdown document for a set of records."""
    lines = ["# doublab report", ""]
    verify = [r for r in records if r.kind == "verify"]
    if verify:
        failed = sum(1 for r in verify for rep in r.reports if not rep["passed"])
        total = sum(len(r.reports) for r in verify)
        lines += [f"{total - failed} of {total} verification procedures passed.", ""]
    lines += constants_section()
    for record in records:
        if record.kind == "simulate":
            lines += _simulate_section(record)
        elif record.kind == "verify":
            lines += _verify_section(record)
        elif record.kind == "oracle":
            lines += _oracle_section(record)
    return "\n".join(lines).rstrip() + "\n"
