"""Verification reports: deterministic JSON and markdown."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from ..models.checks import FAIL, INCONCLUSIVE, PASS, SKIPPED, CheckReport

SCHEMA_VERSION = "1.0"
STATUSES = (PASS, FAIL, SKIPPED, INCONCLUSIVE)


def plain(x):
    """JSON-ready copy: rationals as strings, tuples as lists, sorted keys."""
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, float):
        raise TypeError("floats are not allowed in reports")
    if isinstance(x, dict):
        return {str(k): plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [plain(v) for v in x]
    return repr(x)


@dataclass
class VerificationReport:
    suite: str
    parameters: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)

    def extend(self, anchor: str, scope: str, report: CheckReport):
        for e in report.entries:
            self.checks.append({
                "id": f"{anchor}/{scope}/{report.name}/{e.id}",
                "anchor": anchor,
                "scope": scope,
                "description": e.description,
                "status": e.status,
                "data": plain(e.data),
                "axioms": list(e.axioms),
            })

    @property
    def summary(self) -> dict:
        counts = {s: sum(1 for c in self.checks if c["status"] == s) for s in STATUSES}
        counts["total"] = len(self.checks)
        counts["ok"] = counts[FAIL] == 0 and counts[INCONCLUSIVE] == 0
        return counts

    @property
    def ok(self) -> bool:
        return self.summary["ok"]

    def to_dict(self) -> dict:
        return {"schema_version": SCHEMA_VERSION, "suite": self.suite,
                "parameters": plain(self.parameters), "checks": list(self.checks),
                "summary": self.summary}

    @classmethod
    def from_dict(cls, data: dict) -> "VerificationReport":
        if data.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema version {data.get('schema_version')!r}")
        return cls(data["suite"], dict(data["parameters"]), list(data["checks"]))


def emit(report: VerificationReport, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(report.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    if fmt == "markdown":
        return _markdown(report)
    raise ValueError(f"unknown report format {fmt!r}")


def _markdown(report: VerificationReport) -> str:
    s = report.summary
    lines = [f"# chowkit verification: {report.suite}", ""]
    if report.parameters:
        lines.append("Parameters: " + ", ".join(f"{k} = {json.dumps(plain(v), sort_keys=True)}"
                                                 for k, v in sorted(report.parameters.items())))
        lines.append("")
    lines.append(f"**{'PASS' if s['ok'] else 'FAIL'}**: {s[PASS]} passed, {s[FAIL]} failed, "
                 f"{s[SKIPPED]} skipped, {s[INCONCLUSIVE]} inconclusive")
    lines += ["", "| check | status | description |", "|---|---|---|"]
    for c in report.checks:
        lines.append(f"| `{c['id']}` | {c['status']} | {c['description']} |")
    axioms = sorted({a for c in report.checks for a in c["axioms"]})
    if axioms:
        lines += ["", "Model axioms relied upon:", ""] + [f"- {a}" for a in axioms]
    return "\n".join(lines) + "\n"
