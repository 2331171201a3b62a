"""Serialization of zero-sum and lemma-check reports as CSV or JSON lines."""

import io
import json
import logging
import math
import sys
from pathlib import Path
from typing import List, Optional, Sequence, Union

import pandas as pd

from .diagnostics import CheckId, DiagnosticReport
from .errors import ReportIOError
from .zero_sum import ExperimentSpec, ZeroSumReport

logger = logging.getLogger(__name__)

ZERO_SUM_COLUMNS = ["T1", "T2", "y", "x", "A", "Theta", "zero_count",
                    "S_re", "S_im", "M_re", "M_im", "residual_abs", "ratio"]
DIAGNOSTIC_COLUMNS = ["check_id", "observed", "predicted_bound", "ratio", "pass", "details"]
CSV_FLOAT_FORMAT = "%.15g"

Report = Union[ZeroSumReport, DiagnosticReport]

_SPEC_FIELDS = ("T1", "T2", "y", "x", "A", "C", "Theta", "strict", "advisories")


def _num(value: float) -> Optional[float]:
    """NaN and infinities become null so the output stays strict JSON."""
    return value if math.isfinite(value) else None


def _float(value: Optional[float]) -> float:
    return float("nan") if value is None else value


def _pair(z: complex) -> List[Optional[float]]:
    return [_num(z.real), _num(z.imag)]


def _complex(pair: Sequence[Optional[float]]) -> complex:
    return complex(_float(pair[0]), _float(pair[1]))


class ReportWriter:
    """
    Convert reports to tables and JSON records:
    - zero-sum CSV rows under the fixed header
    - lemma-check CSV rows
    - JSON records with complex numbers as [re, im]
    """

    @staticmethod
    def zero_sum_frame(reports: Sequence[ZeroSumReport]) -> pd.DataFrame:
        rows = []
        for report in reports:
            spec = report.spec
            rows.append({
                "T1": spec.T1, "T2": spec.T2, "y": spec.y, "x": spec.x,
                "A": spec.A, "Theta": spec.Theta, "zero_count": report.zero_count,
                "S_re": report.S.real, "S_im": report.S.imag,
                "M_re": report.M.real, "M_im": report.M.imag,
                "residual_abs": report.residual_abs, "ratio": report.ratio,
            })
        return pd.DataFrame(rows, columns=ZERO_SUM_COLUMNS).astype({"x": "Int64"})

    @staticmethod
    def diagnostic_frame(reports: Sequence[DiagnosticReport]) -> pd.DataFrame:
        rows = [{key: value for key, value in r.to_dict().items() if key in DIAGNOSTIC_COLUMNS} for r in reports]
        return pd.DataFrame(rows, columns=DIAGNOSTIC_COLUMNS)

    @staticmethod
    def to_record(report: Report) -> dict:
        """JSON-ready record with the report's field names; non-finite numbers are null."""
        if isinstance(report, DiagnosticReport):
            record = report.to_dict()
            for key in ("observed", "predicted_bound", "ratio"):
                record[key] = _num(record[key])
            return record
        breakdown = None
        if report.per_zero_breakdown is not None:
            breakdown = [[gamma, _pair(term)] for gamma, term in report.per_zero_breakdown]
        return {
            "spec": report.spec.to_dict(),
            "zero_count": report.zero_count,
            "S": _pair(report.S),
            "M": _pair(report.M),
            "residual": _pair(report.residual),
            "residual_abs": _num(report.residual_abs),
            "normalizer": _num(report.normalizer),
            "ratio": _num(report.ratio),
            "per_zero_breakdown": breakdown,
            "S_abs_error": _num(report.S_abs_error),
            "x_source": report.x_source,
            "perturbations": list(report.perturbations),
            "error": report.error,
        }

    @staticmethod
    def from_record(record: dict) -> Report:
        """Inverse of to_record; the derived spec fields are recomputed."""
        if "check_id" in record:
            return DiagnosticReport(check_id=CheckId(record["check_id"]), observed=_float(record["observed"]),
                                    predicted_bound=_float(record["predicted_bound"]),
                                    ratio=_float(record["ratio"]), passed=record["pass"],
                                    details=record["details"], params=record["params"])
        fields = {name: record["spec"][name] for name in _SPEC_FIELDS if name in record["spec"]}
        fields["advisories"] = tuple(fields.get("advisories", ()))
        breakdown = record["per_zero_breakdown"]
        if breakdown is not None:
            breakdown = tuple((gamma, _complex(term)) for gamma, term in breakdown)
        return ZeroSumReport(
            spec=ExperimentSpec(**fields),
            zero_count=record["zero_count"],
            S=_complex(record["S"]),
            M=_complex(record["M"]),
            residual=_complex(record["residual"]),
            residual_abs=_float(record["residual_abs"]),
            normalizer=_float(record["normalizer"]),
            ratio=_float(record["ratio"]),
            per_zero_breakdown=breakdown,
            S_abs_error=_float(record["S_abs_error"]),
            x_source=record["x_source"],
            perturbations=tuple(record["perturbations"]),
            error=record["error"],
        )

    @staticmethod
    def to_csv_text(reports: Sequence[Report]) -> str:
        if all(isinstance(r, ZeroSumReport) for r in reports):
            frame = ReportWriter.zero_sum_frame(reports)
        elif all(isinstance(r, DiagnosticReport) for r in reports):
            frame = ReportWriter.diagnostic_frame(reports)
        else:
            raise ValueError("Cannot mix zero-sum and diagnostic reports in one CSV")
        buffer = io.StringIO()
        frame.to_csv(buffer, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")
        return buffer.getvalue()

    @staticmethod
    def to_json_lines(reports: Sequence[Report]) -> str:
        return "".join(json.dumps(ReportWriter.to_record(r), allow_nan=False) + "\n" for r in reports)

    @staticmethod
    def parse_json_lines(text: str) -> List[Report]:
        return [ReportWriter.from_record(json.loads(line)) for line in text.splitlines() if line.strip()]

    @staticmethod
    def parse_csv(path: str) -> pd.DataFrame:
        return pd.read_csv(path)

    @staticmethod
    def print_sweep_summary(reports: Sequence[ZeroSumReport]) -> None:
        """Print one line per sweep entry."""
        print("\n" + "=" * 80)
        print("RESIDUAL SWEEP")
        print("=" * 80)
        for report in reports:
            spec = report.spec
            if report.error:
                print(f"T={spec.T_bold:>12.1f}  failed: {report.error}")
                continue
            print(f"T={spec.T_bold:>12.1f}  x={spec.x:<8d} zeros={report.zero_count:<6d} "
                  f"|S-M|={report.residual_abs:<12.5g} ratio={report.ratio:.5g}")
        print("=" * 80 + "\n")


def emit_report(reports: Sequence[Report], fmt: str = "csv", out: Optional[str] = None) -> Optional[Path]:
    """
    Write reports as CSV or JSON lines.

    Args:
        reports: Nonempty sequence of ZeroSumReport or DiagnosticReport
        fmt: "csv" or "json"
        out: Output path; stdout when None

    Returns:
        The written path, or None for stdout

    Raises:
        ReportIOError: If the output cannot be written
    """
    if not reports:
        raise ValueError("emit_report needs at least one report")
    if fmt == "csv":
        text = ReportWriter.to_csv_text(reports)
    elif fmt == "json":
        text = ReportWriter.to_json_lines(reports)
    else:
        raise ValueError(f"Unknown report format: {fmt}")

    if out is None:
        sys.stdout.write(text)
        return None
    path = Path(out)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise ReportIOError(f"cannot write report to {path}: {exc}") from exc
    logger.info("Wrote %d %s report(s) to %s", len(reports), fmt, path)
    return path

