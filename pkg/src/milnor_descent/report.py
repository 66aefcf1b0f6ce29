"""Check records and their text/JSON serialization.

Reports are deterministic: records keep plan order, keys are sorted on
output, exact scalars are written as strings, and elapsed times are only
included when asked for.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import ModP

__all__ = ["CheckRecord", "Report", "jsonable", "emit"]


def jsonable(x):
    """Recursively convert to plain JSON types (exact scalars become strings)."""
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, ModP):
        return int(x)
    if isinstance(x, float):
        return round(x, 6)
    if hasattr(x, "to_dict"):
        return jsonable(x.to_dict())
    return repr(x)


@dataclass
class CheckRecord:
    name: str
    anchor: str
    passed: bool
    details: dict = field(default_factory=dict)
    elapsed: float | None = None

    def to_dict(self, timings=False):
        out = {"name": self.name, "anchor": self.anchor,
               "verdict": "pass" if self.passed else "fail", "details": jsonable(self.details)}
        if timings and self.elapsed is not None:
            out["elapsed_s"] = round(self.elapsed, 3)
        return out


@dataclass
class Report:
    scenario: str
    seed: int = 0
    header: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)

    def add(self, name, anchor, passed, elapsed=None, **details):
        self.checks.append(CheckRecord(name, anchor, bool(passed), details, elapsed))
        return passed

    @property
    def ok(self):
        return all(c.passed for c in self.checks)

    def get(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self, timings=False):
        return {"scenario": self.scenario, "seed": self.seed, "header": jsonable(self.header),
                "ok": self.ok, "checks": [c.to_dict(timings) for c in self.checks]}

    def to_json(self, timings=False):
        return json.dumps(self.to_dict(timings), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    def to_text(self, timings=False):
        lines = [f"scenario: {self.scenario}", f"seed: {self.seed}"]
        for k in sorted(self.header):
            lines.append(f"{k}: {jsonable(self.header[k])}")
        for c in self.checks:
            t = f" ({c.elapsed:.3f}s)" if timings and c.elapsed is not None else ""
            lines.append(f"[{'PASS' if c.passed else 'FAIL'}] {c.name}{t}")
            lines.append(f"    anchor: {c.anchor}")
            if c.details:
                lines.append(f"    details: {json.dumps(jsonable(c.details), sort_keys=True, ensure_ascii=False)}")
        npass = sum(c.passed for c in self.checks)
        lines.append(f"summary: {npass} passed, {len(self.checks) - npass} failed")
        return "\n".join(lines) + "\n"


def emit(report: Report, fmt="text", timings=False):
    if fmt == "json":
        return report.to_json(timings)
    if fmt == "text":
        return report.to_text(timings)
    raise ValueError(f"unknown format {fmt!r}")
