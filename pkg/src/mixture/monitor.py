"""Convergence monitor of mixture fitting: G, R, R_Q, H(Q||P) and H(Y||Y+1)."""

from dataclasses import dataclass

import numpy as np

from ..core.information import LN2
from ..core.probability import Distribution
from .model import MixtureModel, log_responsibilities


@dataclass(frozen=True, eq=False)
class MixtureMonitor:
    """
    Information quantities of a model against the sampling distribution, in bits.

    Attributes:
        g: Semantic mutual information I(X;Theta)
        r: Shannon mutual information of the model's channel under P(X)
        r_q: Shannon mutual information conveyed by Y about Q(X)
        h_qp: sum P log(P/Q), equal to r_q - g
        h_y_yplus: Divergence of the responsibility marginal P+1(Y) from P(Y)
        q_x: Predicted mixture Q(X)
        py_next: Responsibility marginal P+1(Y)
    """

    g: float
    r: float
    r_q: float
    h_qp: float
    h_y_yplus: float
    q_x: Distribution
    py_next: np.ndarray


def weighted_gain(target: Distribution, channel: np.ndarray, log_likelihoods: np.ndarray) -> float:
    """
    G for a channel held fixed: sum_ij P(x_i) P(y_j|x_i) log2(P(x_i|theta_j) / P(x_i)).

    Args:
        target: Sampling distribution P(X)
        channel: P(y_j|x_i), shape (components, grid)
        log_likelihoods: Natural-log P(x_i|theta_j), shape (components, grid)
    """
    live = target.mass > 0.0
    weights = target.mass[live][None, :] * channel[:, live]
    return float(np.sum(weights * (log_likelihoods[:, live] - np.log(target.mass[live])[None, :])) / LN2)


def monitor(target: Distribution, model: MixtureModel) -> MixtureMonitor:
    """
    Evaluate the convergence quantities of a model.

    Args:
        target: Sampling distribution P(X)
        model: Mixture model

    Returns:
        MixtureMonitor with H_QP = R_Q - G and R = R_Q - H(Y||Y+1)
    """
    log_channel, log_q = log_responsibilities(target, model)
    channel = np.exp(log_channel)
    log_lik = model.log_likelihoods()

    live = target.mass > 0.0
    weights = target.mass[live][None, :] * channel[:, live]
    g = weighted_gain(target, channel, log_lik)
    r_q = float(np.sum(weights * (log_lik[:, live] - log_q[live][None, :])) / LN2)

    py_next = weights.sum(axis=1)
    used = py_next > 0.0
    h_y_yplus = float(np.sum(py_next[used] * (np.log(py_next[used]) - np.log(model.py.mass[used]))) / LN2)

    q = np.exp(log_q)
    return MixtureMonitor(
        g=g,
        r=r_q - h_y_yplus,
        r_q=r_q,
        h_qp=r_q - g,
        h_y_yplus=h_y_yplus,
        q_x=Distribution(model.grid, q / q.sum()),
        py_next=py_next,
    )
