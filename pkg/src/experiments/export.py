"""Trace and summary export (CSV and JSON)."""

import json
import math
from pathlib import Path
from typing import Any, Dict, List, Sequence, Union

import numpy as np
import pandas as pd

from ..estimation import TestTrace
from ..mixture import MixtureTrace, StepKind
from ..rg import RGCurve
from ..utils.logging import get_logger

logger = get_logger(__name__)

MIXTURE_COLUMNS = ["step_index", "step_kind", "G", "R", "R_Q", "H_QP", "H_Y_Yplus"]
TEST_COLUMNS = ["iteration", "boundaries", "I_X_Theta", "I_X_Y"]
RG_COLUMNS = ["s", "G", "R", "efficiency"]
SERIES_COLUMNS = ["iteration", "right_steps", "G", "R", "R_Q", "H_QP"]

Trace = Union[MixtureTrace, TestTrace, RGCurve]


def to_plain(value: Any) -> Any:
    """Convert numpy scalars/arrays and tuples into JSON-friendly Python values."""
    if isinstance(value, dict):
        return {str(k): to_plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_plain(value.tolist())
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return None if math.isnan(value) else value
    return value


def trace_records(trace: Trace) -> List[Dict[str, Any]]:
    """Flat rows of a mixture trace, test trace or R(G) curve."""
    if isinstance(trace, MixtureTrace):
        return trace.to_records()
    if isinstance(trace, TestTrace):
        return [
            {
                "iteration": step.iteration,
                "boundaries": " ".join(str(b) for b in step.boundaries),
                "I_X_Theta": step.i_x_theta,
                "I_X_Y": step.shannon_mi,
            }
            for step in trace.steps
        ]
    if isinstance(trace, RGCurve):
        return [
            {"s": p.s, "G": p.g, "R": p.r, "efficiency": eff}
            for p, eff in zip(trace.points, trace.efficiencies())
        ]
    raise TypeError(f"cannot export {type(trace).__name__}")


def iteration_series(trace: MixtureTrace) -> List[Dict[str, Any]]:
    """
    G, R, R_Q and H(Q||P) once per iteration of a mixture fit.

    Rows are taken where the stop rule is tested: after each Left-step b, or at the start
    and after each M-step for EM runs.
    """
    rows = []
    right_steps = 0
    for step in trace.steps:
        if step.kind in (StepKind.RIGHT, StepKind.M_STEP):
            right_steps += 1
        if step.kind in (StepKind.LEFT_B, StepKind.E_STEP, StepKind.M_STEP):
            m = step.monitor
            rows.append(
                {
                    "iteration": len(rows),
                    "right_steps": right_steps,
                    "G": m.g,
                    "R": m.r,
                    "R_Q": m.r_q,
                    "H_QP": m.h_qp,
                }
            )
    return rows


def information_curves(trace: TestTrace) -> List[Dict[str, Any]]:
    """I(X;theta_j|z) over the grid after the first and the last Right-step."""
    if trace.first is None or trace.final is None:
        return []
    rows = []
    for k, z in enumerate(trace.grid.labels):
        row: Dict[str, Any] = {"z": z}
        for tag, matched in (("first", trace.first), ("final", trace.final)):
            for j, curve in enumerate(matched.curves):
                row[f"{tag}_{j}"] = curve[k]
        rows.append(row)
    return rows


def _default_columns(trace: Trace) -> List[str]:
    if isinstance(trace, TestTrace):
        return TEST_COLUMNS
    if isinstance(trace, RGCurve):
        return RG_COLUMNS
    return MIXTURE_COLUMNS


def export_records(records: Sequence[Dict[str, Any]], path: Path, fmt: str = "csv", columns: Sequence[str] = ()) -> Path:
    """
    Write rows to CSV (9 significant digits, LF endings) or JSON.

    Args:
        records: Rows with identical keys
        path: Output file
        fmt: "csv" or "json"
        columns: Header used when records is empty

    Returns:
        Path written
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if fmt == "json":
        path.write_text(json.dumps(to_plain(list(records)), indent=2, sort_keys=True) + "\n", encoding="utf-8")
    elif fmt == "csv":
        frame = pd.DataFrame(list(records)) if records else pd.DataFrame(columns=list(columns))
        frame.to_csv(path, index=False, float_format="%.9g", lineterminator="\n", encoding="utf-8")
    else:
        raise ValueError(f"unknown format {fmt!r}")
    logger.debug("Records exported", path=str(path), rows=len(records))
    return path


def export_trace(trace: Trace, path: Path, fmt: str = "csv") -> Path:
    """Write one row per recorded step of a trace."""
    return export_records(trace_records(trace), path, fmt, columns=_default_columns(trace))


def write_summary(summary: Dict[str, Any], path: Path) -> Path:
    """Write a summary as JSON with sorted keys."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(to_plain(summary), indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path
