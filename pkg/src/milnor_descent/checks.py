"""Small record types shared by every validator and verification routine."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckResult:
    name: str
    passed: bool
    witness: object = None
    details: dict = field(default_factory=dict)

    def to_dict(self):
        out = {"name": self.name, "passed": self.passed}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.details:
            out["details"] = self.details
        return out


@dataclass
class ValidationReport:
    subject: str
    checks: list = field(default_factory=list)

    def add(self, name, passed, witness=None, **details):
        self.checks.append(CheckResult(name, bool(passed), witness, details))
        return passed

    @property
    def ok(self):
        return all(c.passed for c in self.checks)

    def failed(self):
        return [c for c in self.checks if not c.passed]

    def get(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self):
        return {"subject": self.subject, "ok": self.ok,
                "checks": [c.to_dict() for c in self.checks]}

    def __str__(self):
        lines = [f"{self.subject}: {'ok' if self.ok else 'FAILED'}"]
        for c in self.checks:
            w = f"  witness={c.witness}" if c.witness is not None else ""
            lines.append(f"  [{'pass' if c.passed else 'FAIL'}] {c.name}{w}")
        return "\n".join(lines)
