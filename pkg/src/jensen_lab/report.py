"""Experiment reports and their JSON / CSV / text serializations."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Any

# CSV column order
CSV_COLUMNS = ("experiment", "group", "check", "residual", "tolerance", "pass")

# Field order of the JSON object; wall_clock_s is the only nondeterministic one
JSON_FIELDS = (
    "experiment",
    "group",
    "params",
    "seed",
    "c_measured",
    "c_bound",
    "ladder",
    "residuals",
    "tolerances",
    "witnesses",
    "findings",
    "notes",
    "pass",
    "wall_clock_s",
)


@dataclass
class ExperimentReport:
    experiment: str
    group: str
    params: dict[str, Any]
    seed: int | None = None
    c_measured: float = 0.0
    c_bound: float = 0.0
    ladder: list[float] = field(default_factory=list)
    residuals: dict[str, float] = field(default_factory=dict)
    tolerances: dict[str, float] = field(default_factory=dict)
    witnesses: list[dict[str, Any]] = field(default_factory=list)
    findings: dict[str, Any] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    wall_clock_s: float = 0.0

    def check(self, name: str, residual: float, tolerance: float) -> None:
        self.residuals[name] = float(residual)
        self.tolerances[name] = float(tolerance)

    @property
    def passed(self) -> bool:
        return all(self.residuals[k] <= self.tolerances[k] for k in self.residuals)

    def failures(self) -> list[str]:
        return [k for k in self.residuals if self.residuals[k] > self.tolerances[k]]

    def to_dict(self, wall_clock: bool = True) -> dict[str, Any]:
        d = {
            "experiment": self.experiment,
            "group": self.group,
            "params": self.params,
            "seed": self.seed,
            "c_measured": self.c_measured,
            "c_bound": self.c_bound,
            "ladder": list(self.ladder),
            "residuals": dict(self.residuals),
            "tolerances": dict(self.tolerances),
            "witnesses": list(self.witnesses),
            "findings": self.findings,
            "notes": list(self.notes),
            "pass": self.passed,
            "wall_clock_s": self.wall_clock_s,
        }
        if not wall_clock:
            del d["wall_clock_s"]
        return d


def to_json(report: ExperimentReport, wall_clock: bool = True) -> str:
    return json.dumps(report.to_dict(wall_clock), indent=2, allow_nan=False) + "\n"


def to_csv(report: ExperimentReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for name, res in report.residuals.items():
        tol = report.tolerances[name]
        w.writerow([report.experiment, report.group, name, repr(res), repr(tol), res <= tol])
    return buf.getvalue()


def to_text(report: ExperimentReport) -> str:
    lines = [f"{report.experiment} on {report.group}: {'PASS' if report.passed else 'FAIL'}"]
    if report.params:
        lines.append("params: " + ", ".join(f"{k}={v}" for k, v in report.params.items()))
    lines.append(f"c_measured = {report.c_measured:.6g}, c_bound = {report.c_bound:.6g}")
    if report.ladder:
        lines.append("ladder c1..c4 = " + ", ".join(f"{c:.6g}" for c in report.ladder))
    for name, res in report.residuals.items():
        tol = report.tolerances[name]
        mark = "ok  " if res <= tol else "FAIL"
        lines.append(f"  [{mark}] {name}: {res:.6g} (tol {tol:.3g})")
    for key, val in report.findings.items():
        lines.append(f"  {key}: {val}")
    lines.append("witnesses:")
    if report.witnesses:
        for w in report.witnesses:
            lines.append("  " + ", ".join(f"{k}={v}" for k, v in w.items()))
    else:
        lines.append("  (none)")
    for note in report.notes:
        lines.append(f"note: {note}")
    return "\n".join(lines) + "\n"


def render(report: ExperimentReport, fmt: str) -> str:
    if fmt == "json":
        return to_json(report)
    if fmt == "csv":
        return to_csv(report)
    if fmt == "text":
        return to_text(report)
    raise ValueError(f"unknown format {fmt!r}")
