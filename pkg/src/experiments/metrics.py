"""Convergence statistics over batches of mixture trials."""

from typing import TYPE_CHECKING, Dict, Optional, Sequence

import pandas as pd

from ..utils.logging import get_logger

if TYPE_CHECKING:
    from .trials import TrialResult

logger = get_logger(__name__)


def _step_statistics(steps: pd.Series, prefix: str) -> Dict[str, Optional[float]]:
    if steps.empty:
        return {f"{prefix}mode": None, f"{prefix}median": None, f"{prefix}mean": None, f"{prefix}max": None}
    return {
        # smallest of the most frequent counts
        f"{prefix}mode": int(steps.mode().iloc[0]),
        f"{prefix}median": float(steps.median()),
        f"{prefix}mean": float(steps.mean()),
        f"{prefix}max": int(steps.max()),
    }


def iteration_statistics(results: Sequence["TrialResult"]) -> Dict[str, object]:
    """
    Calculate convergence statistics of a batch of trials.

    Step statistics cover converged trials only; failures count toward the failure rate.

    Args:
        results: Trial results

    Returns:
        Dictionary of statistics
    """
    frame = pd.DataFrame([result.as_record() for result in results])
    if frame.empty:
        return {"count": 0, "failures": 0, "failure_rate": 0.0, "monotonicity_violations": 0}

    converged = frame[frame["converged"]]
    failures = int(len(frame) - len(converged))
    stats: Dict[str, object] = {
        "count": int(len(frame)),
        "failures": failures,
        "failure_rate": failures / len(frame),
        "errors": int(frame["error"].notna().sum()),
        "monotonicity_violations": int(frame["monotonicity_violations"].sum()),
        "trials_with_violations": int((frame["monotonicity_violations"] > 0).sum()),
        "max_identity_error": float(frame["identity_error"].max()),
    }
    stats.update(_step_statistics(converged["right_steps"], "right_steps_"))

    if "em_steps" in frame and frame["em_steps"].notna().any():
        em_converged = frame[frame["em_converged"].fillna(False).astype(bool)]
        stats["em_failures"] = int(len(frame) - len(em_converged))
        stats.update(_step_statistics(em_converged["em_steps"].astype(int), "em_steps_"))

    logger.info(
        "Trial statistics",
        count=stats["count"],
        mode=stats["right_steps_mode"],
        median=stats["right_steps_median"],
        failure_rate=stats["failure_rate"],
    )
    return stats
