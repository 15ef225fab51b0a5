"""
Scenario Reports - per-check records and their JSON, CSV and text renderings
"""

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional

from ..config import RUNNER_CONFIG
from ..exceptions import ReportFormatError

PASS = "pass"
FAIL = "fail"
ERROR = "error"

CSV_COLUMNS = [
    "check", "status", "polarity", "tolerance", "bound", "samples",
    "max_residual", "mean_residual", "min_residual", "witness_point", "details", "error", "elapsed_seconds",
]


@dataclass
class CheckRecord:
    """Outcome of one check"""
    check: str
    description: str
    status: str
    polarity: str
    tolerance: Optional[float]
    bound: Optional[float]
    samples: int = 0
    max_residual: Optional[float] = None
    mean_residual: Optional[float] = None
    min_residual: Optional[float] = None
    witness_point: Optional[List[float]] = None
    details: Dict[str, Any] = field(default_factory=dict)
    error: Optional[str] = None
    elapsed_seconds: Optional[float] = None

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self, include_timing: bool = True) -> Dict[str, Any]:
        data = asdict(self)
        if not include_timing:
            data.pop("elapsed_seconds")
        return data


@dataclass
class Report:
    """All check records of one scenario run"""
    scenario: str
    description: str
    n: int
    seed: int
    samples: int
    derivative_mode: str
    records: List[CheckRecord] = field(default_factory=list)
    elapsed_seconds: Optional[float] = None
    schema_version: int = RUNNER_CONFIG["schema_version"]

    @property
    def passed(self) -> bool:
        return all(record.passed for record in self.records)

    @property
    def summary(self) -> Dict[str, int]:
        counts = {PASS: 0, FAIL: 0, ERROR: 0}
        for record in self.records:
            counts[record.status] += 1
        return {"total": len(self.records), "passed": counts[PASS], "failed": counts[FAIL], "errors": counts[ERROR]}

    def record(self, check_id: str) -> CheckRecord:
        for record in self.records:
            if record.check == check_id:
                return record
        raise KeyError(check_id)

    def to_dict(self, include_timing: bool = True) -> Dict[str, Any]:
        data = {
            "schema_version": self.schema_version,
            "scenario": self.scenario,
            "description": self.description,
            "n": self.n,
            "seed": self.seed,
            "samples": self.samples,
            "derivative_mode": self.derivative_mode,
            "passed": self.passed,
            "summary": self.summary,
            "records": [record.to_dict(include_timing) for record in self.records],
        }
        if include_timing:
            data["elapsed_seconds"] = self.elapsed_seconds
        return data


def _json(report: Report, include_timing: bool) -> str:
    return json.dumps(report.to_dict(include_timing), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _csv(report: Report, include_timing: bool) -> str:
    columns = CSV_COLUMNS if include_timing else CSV_COLUMNS[:-1]
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for record in report.records:
        row = record.to_dict(include_timing)
        row["witness_point"] = json.dumps(row["witness_point"])
        row["details"] = json.dumps(row["details"], sort_keys=True, ensure_ascii=False)
        writer.writerow({key: "" if row[key] is None else row[key] for key in columns})
    return buffer.getvalue()


def _fmt(value: Optional[float]) -> str:
    return "-" if value is None else f"{value:.3e}"


def _text(report: Report, include_timing: bool) -> str:
    summary = report.summary
    lines = [
        f"Scenario: {report.scenario} (n = {report.n}, seed = {report.seed}, "
        f"{report.samples} samples, {report.derivative_mode} derivatives)",
        "",
    ]
    for record in report.records:
        marker = {PASS: "✅", FAIL: "❌", ERROR: "⚠️"}[record.status]
        if record.polarity == "nonzero":
            limit = f"min {_fmt(record.min_residual)} >= {_fmt(record.bound)}"
        elif record.polarity == "zero":
            limit = f"max {_fmt(record.max_residual)} <= {_fmt(record.tolerance)}"
        else:
            limit = f"max {_fmt(record.max_residual)} (diagnostic)"
        line = f"{marker} {record.check:<26} {record.status.upper():<6} {limit}"
        if include_timing and record.elapsed_seconds is not None:
            line += f"  [{record.elapsed_seconds:.2f}s]"
        lines.append(line)
        if record.error:
            lines.append(f"   {record.error}")
    lines.append("")
    lines.append(f"{summary['passed']}/{summary['total']} passed, {summary['failed']} failed, {summary['errors']} errors")
    if include_timing and report.elapsed_seconds is not None:
        lines.append(f"Elapsed: {report.elapsed_seconds:.2f}s")
    return "\n".join(lines) + "\n"


EMITTERS = {"json": _json, "csv": _csv, "text": _text}


def emit_report(report: Report, fmt: str = "json", include_timing: bool = True) -> bytes:
    """
    Render a report

    Args:
        report: Scenario report
        fmt: json, csv or text
        include_timing: Keep wall-clock fields (drop them for byte-stable output)

    Returns:
        UTF-8 encoded report
    """
    if fmt not in EMITTERS:
        raise ReportFormatError(f"unknown report format {fmt!r}; expected one of {', '.join(EMITTERS)}")
    return EMITTERS[fmt](report, include_timing).encode("utf-8")
