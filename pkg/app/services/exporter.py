"""
CSV emitters for run artifacts.

All files use '.' decimals, '\\n' line endings and 17 significant digits so
that 64-bit floats round-trip exactly.
"""

import csv
import io
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Iterable, List, Sequence

from app.models import ArrayGeometry, FieldMap, PhaseProfile, RobustReport, Scheme
from app.services.validation import ValidationResult


logger = logging.getLogger(__name__)


def format_number(value: Any) -> str:
    """Locale-free text for one cell; floats with 17 significant digits"""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return f"{value:.17g}"
    if isinstance(value, Scheme):
        return value.value
    return str(value)


def _create_csv(fieldnames: Sequence[str], rows: Iterable[Dict[str, Any]]) -> str:
    """
    Create CSV content from row dicts.

    Args:
        fieldnames: Column order
        rows: One dict per row; missing keys become empty cells

    Returns:
        CSV content as string
    """
    output = io.StringIO()
    writer = csv.DictWriter(output, fieldnames=list(fieldnames), lineterminator="\n", restval="")
    writer.writeheader()
    for row in rows:
        writer.writerow({key: format_number(value) for key, value in row.items()})
    return output.getvalue()


def write_artifact(out_dir: Path, name: str, content) -> Path:
    """Write text or bytes to out_dir/name, creating the directory"""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / name
    data = content.encode("utf-8") if isinstance(content, str) else content
    path.write_bytes(data)
    logger.info(f"Wrote {path} ({len(data)} bytes)")
    return path


# ==================== PROFILE ====================

PROFILE_FIELDS = ["element_index", "x_m", "phase_rad_unwrapped", "phase_rad_wrapped", "label"]


def profile_csv(profile: PhaseProfile, array: ArrayGeometry) -> str:
    wrapped = profile.wrapped
    return _create_csv(
        PROFILE_FIELDS,
        (
            {
                "element_index": index,
                "x_m": float(array.element_x[index]),
                "phase_rad_unwrapped": float(profile.phases[index]),
                "phase_rad_wrapped": float(wrapped[index]),
                "label": profile.labels[index].value,
            }
            for index in range(len(profile))
        ),
    )


# ==================== SWEEP REPORT ====================

REPORT_FIELDS = ["p_dbm", "scheme", "r_ue", "r_e_mean", "r_e_worst", "r_s_mean", "r_s_worst"]


@dataclass(frozen=True)
class SweepRow:
    p_dbm: float
    scheme: Scheme
    report: RobustReport


def report_csv(rows: List[SweepRow]) -> str:
    return _create_csv(
        REPORT_FIELDS,
        (
            {
                "p_dbm": float(row.p_dbm),
                "scheme": row.scheme,
                "r_ue": row.report.r_ue,
                "r_e_mean": row.report.r_e_mean,
                "r_e_worst": row.report.r_e_worst,
                "r_s_mean": row.report.r_s_mean,
                "r_s_worst": row.report.r_s_worst,
            }
            for row in rows
        ),
    )


# ==================== FIELD MAP ====================

def field_csv(fmap: FieldMap) -> str:
    """ny rows of nx linear values, first row at y_min; no header"""
    output = io.StringIO()
    writer = csv.writer(output, lineterminator="\n")
    for row in fmap.values:
        writer.writerow([format_number(float(v)) for v in row])
    return output.getvalue()


# ==================== VALIDATION ====================

VALIDATE_FIELDS = [
    "element_index", "x_m", "label", "cos_fd", "theta_fd_rad", "theta_analytic_rad",
    "check", "residual", "tolerance", "passed",
]


def validate_csv(result: ValidationResult) -> str:
    rows: List[Dict[str, Any]] = [
        {
            "element_index": item.index,
            "x_m": item.x,
            "label": item.label.value,
            "cos_fd": item.cos_fd,
            "theta_fd_rad": item.theta_fd,
            "theta_analytic_rad": item.theta_analytic,
            "check": item.check,
            "residual": item.residual,
            "tolerance": item.tolerance,
            "passed": "skip" if item.passed is None else item.passed,
        }
        for item in result.checks
    ]

    for check, residual in sorted(result.max_residuals.items()):
        rows.append({"element_index": "summary", "check": f"max_{check}", "residual": residual})
    rows.append({
        "element_index": "summary", "check": "min_ray_clearance_m", "residual": result.min_ray_clearance,
    })
    rows.append({"element_index": "summary", "check": "all_passed", "passed": result.passed})

    trajectory = result.trajectory
    if trajectory is not None:
        for name, point in (
            ("T", trajectory.start),
            ("P", trajectory.first_tangent),
            ("Q", trajectory.last_tangent),
            ("R", trajectory.target),
        ):
            rows.append({"element_index": "trajectory", "check": f"{name}_x", "residual": point.x})
            rows.append({"element_index": "trajectory", "check": f"{name}_y", "residual": point.y})
        rows.append({"element_index": "trajectory", "check": "theta_start", "residual": trajectory.theta_start})
        rows.append({"element_index": "trajectory", "check": "theta_end", "residual": trajectory.theta_end})

    return _create_csv(VALIDATE_FIELDS, rows)


# ==================== TIMING ====================

TIMING_FIELDS = ["scheme", "num_elements", "repeats", "mean_s", "min_s", "growth_ratio"]


def timing_csv(rows: List[Dict[str, Any]]) -> str:
    return _create_csv(TIMING_FIELDS, rows)
