"""Structured results of the verification procedures."""

import json
import math
from dataclasses import dataclass, field
from typing import Any

_COMPARE = {
    "<": lambda v, t: v < t,
    "<=": lambda v, t: v <= t,
    ">": lambda v, t: v > t,
    ">=": lambda v, t: v >= t,
    "==": lambda v, t: v == t,
}


@dataclass
class Check:
    """One statistic compared with one threshold."""

    name: str
    value: float
    threshold: float
    comparison: str = "<"
    gated: bool = True
    claim: str = ""

    @property
    def ok(self) -> bool:
        if isinstance(self.value, float) and math.isnan(self.value):
            return False
        return _COMPARE[self.comparison](self.value, self.threshold)

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "value": _plain(self.value),
            "threshold": _plain(self.threshold),
            "comparison": self.comparison,
            "gated": self.gated,
            "ok": self.ok,
            "claim": self.claim,
        }


def _plain(x: Any) -> Any:
    if isinstance(x, bool):
        return x
    if isinstance(x, int):
        return x
    try:
        return float(x)
    except (TypeError, ValueError):
        return str(x)


@dataclass
class TestReport:
    """Outcome of one verification procedure; passes when every gated check does."""

    __test__ = False

    name: str
    sample_size: int
    checks: list[Check] = field(default_factory=list)
    metadata: dict[str, Any] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks if c.gated)

    def add(
        self,
        name: str,
        value: float,
        threshold: float,
        comparison: str = "<",
        gated: bool = True,
        claim: str = "",
    ) -> Check:
        check = Check(name, value, threshold, comparison, gated, claim)
        self.checks.append(check)
        return check

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "sample_size": self.sample_size,
            "checks": [c.to_dict() for c in self.checks],
            "metadata": self.metadata,
            "notes": self.notes,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_markdown(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        lines = [
            f"### {self.name}: {status}",
            "",
            "| check | value | threshold | gated | ok |",
            "|---|---|---|---|---|",
        ]
        for c in self.checks:
            lines.append(
                f"| {c.name} | {_fmt(c.value)} | {c.comparison} {_fmt(c.threshold)} | "
                f"{'yes' if c.gated else 'no'} | {'yes' if c.ok else 'no'} |"
            )
        lines.extend(f"- {note}" for note in self.notes)
        return "\n".join(lines) + "\n"


def _fmt(x: Any) -> str:
    if isinstance(x, float):
        return f"{x:.6g}"
    return str(x)


@dataclass(frozen=True)
class NormalizedSample:
    """A raw value standardised as (raw - centering) / scale."""

    raw: float
    centering: float
    scale: float

    def __post_init__(self) -> None:
        if not self.scale > 0:
            raise ValueError("scale must be positive")

    @property
    def normalized(self) -> float:
        return (self.raw - self.centering) / self.scale


def truncated(x: float, digits: int = 4) -> str:
    """``x`` cut (not rounded) to ``digits`` decimals, as constants are quoted."""
    scale = 10**digits
    return f"{math.floor(x * scale) / scale:.{digits}f}"
