"""Structured pass/fail records for every computational check."""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


def jsonable(value: Any) -> Any:
    """Exact numbers become decimal strings; containers are walked."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        return str(value)
    if hasattr(value, "item") and not hasattr(value, "__len__"):
        return jsonable(value.item())
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, float):
        return repr(value)
    return str(value)


@dataclass
class VerificationReport:
    claim: str
    status: str
    expected: Any = None
    actual: Any = None
    witnesses: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    runtime: float = 0.0

    def __post_init__(self):
        if self.status not in (PASS, FAIL, INCONCLUSIVE):
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == FAIL and not self.witnesses:
            raise ValueError(f"failed claim {self.claim!r} must carry a witness")

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self, include_runtime: bool = False) -> dict:
        out = {
            "claim": self.claim,
            "status": self.status,
            "expected": jsonable(self.expected),
            "actual": jsonable(self.actual),
            "witnesses": jsonable(self.witnesses),
            "details": jsonable(self.details),
        }
        if include_runtime:
            out["runtime"] = round(self.runtime, 6)
        return out

    def line(self) -> str:
        return f"[{self.status.upper():>12}] {self.claim}: expected {_show(self.expected)}, actual {_show(self.actual)}"


def _show(value: Any) -> str:
    """Compact human form: Fractions as p/q, partitions as (a,b,c)."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return "{" + ", ".join(f"{_show(k)}: {_show(v)}" for k, v in value.items()) + "}"
    if isinstance(value, tuple) and all(isinstance(v, int) for v in value):
        return "(" + ",".join(map(str, value)) + ")"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_show(v) for v in value) + "]"
    return str(value)


def verdict(claim: str, ok: bool, expected=None, actual=None, witnesses=None, **details) -> VerificationReport:
    """Build a report; on failure with no explicit witness, the actual value is the witness."""
    witnesses = list(witnesses or [])
    if not ok and not witnesses:
        witnesses = [{"expected": expected, "actual": actual}]
    return VerificationReport(claim, PASS if ok else FAIL, expected, actual, witnesses, details)


@contextmanager
def timed(reports: list[VerificationReport]):
    """Stamp wall time on every report appended inside the block."""
    start = time.perf_counter()
    before = len(reports)
    yield
    elapsed = time.perf_counter() - start
    for r in reports[before:]:
        r.runtime = elapsed
