"""Exact finite distributions with rational weights."""

import json
from collections import defaultdict
from collections.abc import Callable, Hashable, Iterator, Mapping
from fractions import Fraction
from typing import Any

from ..errors import InvariantViolation


def _to_jsonable(key: Hashable) -> Any:
    if isinstance(key, tuple):
        return [_to_jsonable(k) for k in key]
    return key


def _from_jsonable(value: Any) -> Hashable:
    if isinstance(value, list):
        return tuple(_from_jsonable(v) for v in value)
    return value


def encode_key(key: Hashable) -> str:
    """JSON object key for a distribution state."""
    if isinstance(key, int):
        return str(key)
    return json.dumps(_to_jsonable(key), separators=(",", ":"))


def decode_key(text: str) -> Hashable:
    return _from_jsonable(json.loads(text))


def _sort_key(key: Hashable) -> tuple:
    if isinstance(key, int):
        return (0, key, "")
    return (1, 0, repr(key))


class RationalDist:
    """Mapping from states to positive Fractions summing exactly to one."""

    def __init__(self, weights: Mapping[Hashable, Fraction], validate: bool = True):
        self._weights = {k: Fraction(v) for k, v in weights.items()}
        if validate:
            self.validate()

    def validate(self) -> None:
        if any(w <= 0 for w in self._weights.values()):
            raise InvariantViolation("distribution has a non-positive weight")
        total = sum(self._weights.values(), Fraction(0))
        if total != 1:
            raise InvariantViolation(f"distribution sums to {total}, not 1")

    def __len__(self) -> int:
        return len(self._weights)

    def __iter__(self) -> Iterator[Hashable]:
        return iter(self._weights)

    def __getitem__(self, key: Hashable) -> Fraction:
        return self._weights.get(key, Fraction(0))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalDist):
            return NotImplemented
        return self._weights == other._weights

    def __repr__(self) -> str:
        shown = ", ".join(f"{k!r}: {v}" for k, v in list(self.items())[:6])
        more = ", ..." if len(self) > 6 else ""
        return f"RationalDist({{{shown}{more}}})"

    def items(self) -> list[tuple[Hashable, Fraction]]:
        """States and weights, sorted by state."""
        return sorted(self._weights.items(), key=lambda kv: _sort_key(kv[0]))

    def as_dict(self) -> dict[Hashable, Fraction]:
        return dict(self._weights)

    def marginal(self, fn: Callable[[Hashable], Hashable]) -> "RationalDist":
        """Push the distribution forward through ``fn``."""
        out: dict[Hashable, Fraction] = defaultdict(Fraction)
        for key, weight in self._weights.items():
            out[fn(key)] += weight
        return RationalDist(out)

    def expect(self, fn: Callable[[Hashable], Any] = lambda x: x) -> Fraction:
        """Exact expectation of ``fn`` (identity by default)."""
        return sum((w * Fraction(fn(k)) for k, w in self._weights.items()), Fraction(0))

    def mean(self) -> Fraction:
        return self.expect()

    def to_json(self) -> str:
        """JSON object mapping encoded states to ``"num/den"`` strings."""
        payload = {encode_key(k): f"{w.numerator}/{w.denominator}" for k, w in self.items()}
        return json.dumps(payload, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "RationalDist":
        data = json.loads(text)
        return cls({decode_key(k): Fraction(v) for k, v in data.items()})
