"""Run records: per-replicate CSV payloads plus a JSON summary per run directory."""

import csv
import io
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from . import __version__
from .config import defaults_version
from .errors import RecordError

logger = logging.getLogger(__name__)

CSV_SCHEMA_VERSION = 1
CSV_NAME = "replicates.csv"
SUMMARY_NAME = "summary.json"
ORACLE_NAME = "oracle.json"

BASE_COLUMNS = ("replicate", "n", "engine", "B", "kappa", "H")


def csv_columns(m: int, k: int) -> list[str]:
    """Fixed column order: base columns, U_0..U_m, then h_1..h_k."""
    return [*BASE_COLUMNS, *(f"U_{i}" for i in range(m + 1)), *(f"h_{j}" for j in range(1, k + 1))]


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def render_csv(rows: list[dict[str, Any]], columns: list[str]) -> str:
    """CSV text with a schema line, a header and one line per replicate."""
    buf = io.StringIO()
    buf.write(f"#schema_version={CSV_SCHEMA_VERSION}\n")
    writer = csv.DictWriter(buf, fieldnames=columns, extrasaction="raise", lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({c: _cell(row.get(c)) for c in columns})
    return buf.getvalue()


def read_csv(path: Path) -> list[dict[str, str]]:
    """Rows of a replicate CSV; empty cells stay empty strings."""
    try:
        text = path.read_text("utf-8")
    except FileNotFoundError as e:
        raise RecordError(f"Missing replicate file: {path}") from e
    first, _, body = text.partition("\n")
    if first != f"#schema_version={CSV_SCHEMA_VERSION}":
        raise RecordError(f"{path}: unsupported or missing schema line {first!r}")
    reader = csv.DictReader(io.StringIO(body))
    if reader.fieldnames is None or list(reader.fieldnames[: len(BASE_COLUMNS)]) != list(BASE_COLUMNS):
        raise RecordError(f"{path}: unexpected header")
    return list(reader)


@dataclass
class RunRecord:
    """Everything one command produced: config snapshot, payloads, reports and timings."""

    kind: str
    config: dict[str, Any]
    version: str = __version__
    defaults_schema: int = field(default_factory=defaults_version)
    rows: list[dict[str, Any]] = field(default_factory=list, repr=False)
    columns: list[str] = field(default_factory=list, repr=False)
    summary: dict[str, Any] = field(default_factory=dict)
    oracle: dict[str, Any] | None = None
    reports: list[dict[str, Any]] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)
    out_dir: Path | None = None

    @property
    def passed(self) -> bool:
        return all(r["passed"] for r in self.reports)

    def summary_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "version": self.version,
            "defaults_schema": self.defaults_schema,
            "config": self.config,
            "summary": self.summary,
            "reports": self.reports,
            "timings": self.timings,
        }

    def write(self, out_dir: Path) -> Path:
        """Write the record's files into ``out_dir`` and return it."""
        try:
            out_dir.mkdir(parents=True, exist_ok=True)
            if self.columns:
                (out_dir / CSV_NAME).write_text(render_csv(self.rows, self.columns), "utf-8")
            if self.oracle is not None:
                (out_dir / ORACLE_NAME).write_text(json.dumps(self.oracle, indent=2, sort_keys=True) + "\n", "utf-8")
            (out_dir / SUMMARY_NAME).write_text(
                json.dumps(self.summary_dict(), indent=2, sort_keys=True) + "\n", "utf-8"
            )
        except OSError as e:
            raise RecordError(f"Cannot write run record to {out_dir}: {e}") from e
        self.out_dir = out_dir
        logger.info("wrote %s record to %s", self.kind, out_dir)
        return out_dir


def load_record(run_dir: Path) -> RunRecord:
    """Read a record back from its directory."""
    path = run_dir / SUMMARY_NAME
    try:
        data = json.loads(path.read_text("utf-8"))
    except FileNotFoundError as e:
        raise RecordError(f"No run record in {run_dir}") from e
    except json.JSONDecodeError as e:
        raise RecordError(f"Corrupt run record {path}: {e}") from e
    try:
        record = RunRecord(
            kind=data["kind"],
            config=data["config"],
            version=data["version"],
            defaults_schema=data["defaults_schema"],
            summary=data.get("summary", {}),
            reports=data.get("reports", []),
            timings=data.get("timings", {}),
            out_dir=run_dir,
        )
    except (KeyError, TypeError) as e:
        raise RecordError(f"Corrupt run record {path}: missing {e}") from e
    if (run_dir / CSV_NAME).exists():
        record.rows = read_csv(run_dir / CSV_NAME)
    if (run_dir / ORACLE_NAME).exists():
        try:
            record.oracle = json.loads((run_dir / ORACLE_NAME).read_text("utf-8"))
        except json.JSONDecodeError as e:
            raise RecordError(f"Corrupt oracle payload in {run_dir}: {e}") from e
    return record


def find_records(root: Path) -> list[RunRecord]:
    """Every record under ``root`` (the directory itself included), sorted by path."""
    if not root.is_dir():
        raise RecordError(f"Not a directory: {root}")
    records = [load_record(p.parent) for p in sorted(root.rglob(SUMMARY_NAME))]
    if not records:
        raise RecordError(f"No run records under {root}")
    return records
