"""Fuzzy decision functions over information curves."""

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy.special import logsumexp

from ..core.errors import InvalidParameterError
from ..core.information import LN2
from ..core.probability import Distribution
from ..utils.logging import get_logger

logger = get_logger(__name__)

# s = +inf: the decision function becomes the crisp indicator of the argmax partition
CRISP = math.inf


@dataclass(frozen=True, eq=False)
class DecisionTable:
    """P(y_j|z_k) table, shape (labels, cells), plus the cells that fell back to uniform."""

    table: np.ndarray
    fallback_cells: Tuple[int, ...] = ()

    @property
    def underflow(self) -> bool:
        return bool(self.fallback_cells)

    def labels(self) -> Tuple[int, ...]:
        """Most probable label per cell (ties to the lower index)."""
        return tuple(int(j) for j in np.argmax(self.table, axis=0))


def normalized_columns(log_terms: np.ndarray) -> DecisionTable:
    """
    Normalize each column of log-domain weights into probabilities.

    Columns whose normalizer is not finite are replaced by a uniform column.
    """
    with np.errstate(invalid="ignore"):
        log_norm = logsumexp(log_terms, axis=0)
        table = np.exp(log_terms - log_norm[None, :])
    bad = ~np.isfinite(log_norm) | np.any(~np.isfinite(table), axis=0)
    if np.any(bad):
        table[:, bad] = 1.0 / log_terms.shape[0]
        logger.warning("Decision weights underflowed, using uniform fallback", cells=int(bad.sum()))
    return DecisionTable(table=table, fallback_cells=tuple(int(k) for k in np.flatnonzero(bad)))


def crisp_indicator(scores: np.ndarray) -> DecisionTable:
    """Indicator of argmax over rows per column, ties broken toward the lower row."""
    table = np.zeros_like(scores, dtype=float)
    table[np.argmax(scores, axis=0), np.arange(scores.shape[1])] = 1.0
    return DecisionTable(table=table)


def fuzzy_classifier(curves: np.ndarray, py: Distribution, s: float) -> DecisionTable:
    """
    Fuzzy classification P(y_j|z) proportional to P(y_j) 2^(s I(X;theta_j|z)).

    Args:
        curves: Information curves in bits, shape (labels, cells)
        py: Label distribution P(Y)
        s: Sharpness; CRISP returns the argmax indicator

    Returns:
        DecisionTable whose columns sum to 1
    """
    curves = np.asarray(curves, dtype=float)
    if curves.ndim != 2 or curves.shape[0] != len(py):
        raise InvalidParameterError("curves must have one row per label of P(Y)")
    if s == CRISP:
        return crisp_indicator(curves)
    if not math.isfinite(s):
        raise InvalidParameterError(f"s must be finite or CRISP, got {s}")

    with np.errstate(divide="ignore"):
        log_py = np.log(py.mass)
    return normalized_columns(log_py[:, None] + s * LN2 * curves)
