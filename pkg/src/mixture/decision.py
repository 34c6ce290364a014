"""Fuzzy and crisp decision rules of a fitted mixture."""

import math

import numpy as np

from ..core.errors import InvalidParameterError
from ..estimation.classifier import CRISP, DecisionTable, normalized_columns
from .model import MixtureModel


def decision_rule(model: MixtureModel, s: float) -> DecisionTable:
    """
    Decision function P(y_j|x) proportional to P(y_j) P(x|theta_j)^s.

    Args:
        model: Fitted mixture
        s: Sharpness; CRISP picks argmax_j P(x|theta_j), breaking ties by larger
            P(y_j) and then by lower index

    Returns:
        DecisionTable with shape (components, grid)
    """
    log_lik = model.log_likelihoods()
    if s == CRISP:
        weights = model.py.mass
        table = np.zeros_like(log_lik)
        for k in range(log_lik.shape[1]):
            best = max(range(model.n), key=lambda j: (log_lik[j, k], weights[j], -j))
            table[best, k] = 1.0
        return DecisionTable(table=table)
    if not math.isfinite(s):
        raise InvalidParameterError(f"s must be finite or CRISP, got {s}")

    with np.errstate(divide="ignore"):
        log_py = np.log(model.py.mass)
    return normalized_columns(log_py[:, None] + s * log_lik)
