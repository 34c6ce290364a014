"""Standard EM on a discretized target, with the Q/H/L decomposition."""

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from ..core.information import LN2, entropy
from ..core.probability import Distribution
from ..utils.logging import get_logger
from .cm import MixtureConfig, left_step_a, right_step
from .model import MixtureModel, check_initialization, log_responsibilities
from .monitor import monitor
from .trace import MixtureTrace, StepKind

logger = get_logger(__name__)


@dataclass(frozen=True)
class EMObjectives:
    """
    EM objectives per unit sample size, in bits.

    Attributes:
        log_l: sum_i P(x_i) log2 Q(x_i)
        q_fun: sum_ij w_ij log2(P(y_j) P(x_i|theta_j))
        h_fun: -sum_ij w_ij log2 P(y_j|x_i), the positive entropy term
        l_fun: q_fun + h_fun, a lower bound of log_l
        g: Semantic mutual information of the same channel and model
        h_x: Entropy of the target
        h_y_gen: -sum_j P+1(y_j) log2 P(y_j)
    """

    log_l: float
    q_fun: float
    h_fun: float
    l_fun: float
    g: float
    h_x: float
    h_y_gen: float


def _xlog2(weights: np.ndarray, log_values: np.ndarray) -> float:
    live = weights > 0.0
    return float(np.sum(weights[live] * log_values[live]) / LN2)


def em_objectives(
    target: Distribution, model: MixtureModel, channel: Optional[np.ndarray] = None
) -> EMObjectives:
    """
    Evaluate log-likelihood, Q-function, entropy term and their bound.

    Args:
        target: Sampling distribution P(X)
        model: Mixture model
        channel: Responsibilities P(y_j|x_i); the model's own when omitted

    Returns:
        EMObjectives
    """
    own_log_channel, log_q = log_responsibilities(target, model)
    if channel is None:
        log_channel = own_log_channel
        channel = np.exp(own_log_channel)
    else:
        channel = np.asarray(channel, dtype=float)
        with np.errstate(divide="ignore"):
            log_channel = np.log(channel)

    log_lik = model.log_likelihoods()
    with np.errstate(divide="ignore"):
        log_py = np.log(model.py.mass)
        log_target = np.log(target.mass)
    weights = target.mass[None, :] * channel
    py_next = weights.sum(axis=1)

    q_fun = _xlog2(weights, log_py[:, None] + log_lik)
    h_fun = -_xlog2(weights, log_channel)
    h_x = entropy(target)
    return EMObjectives(
        log_l=_xlog2(target.mass, log_q),
        q_fun=q_fun,
        h_fun=h_fun,
        l_fun=q_fun + h_fun,
        g=_xlog2(weights, log_lik - log_target[None, :]),
        h_x=h_x,
        h_y_gen=-_xlog2(py_next, log_py),
    )


def em_step(target: Distribution, model: MixtureModel, config: Optional[MixtureConfig] = None) -> MixtureModel:
    """
    One EM iteration.

    The E-step is Left-step a; the M-step sets P(y_j) to the responsibility marginal and
    refits every component with the same weights as the CM Right-step.
    """
    config = config or MixtureConfig()
    channel, _ = left_step_a(target, model)
    py = Distribution(model.py.support, target.mass @ channel.T)
    components = right_step(target, channel, model.grid, model.components, config.d_min, config.polish)
    return MixtureModel(grid=model.grid, components=components, py=py)


def run_em(
    target: Union[Distribution, MixtureModel],
    init: MixtureModel,
    config: Optional[MixtureConfig] = None,
) -> MixtureTrace:
    """
    Run EM until H(Q||P) falls to the tolerance.

    Args:
        target: Sampling distribution P(X), or the true model generating it
        init: Starting model
        config: Tolerance, step cap (max_right_steps) and M-step options

    Returns:
        MixtureTrace whose right_steps counts M-steps
    """
    config = config or MixtureConfig()
    if isinstance(target, MixtureModel):
        target = target.mixture()
    check_initialization(target, init)

    trace = MixtureTrace(target=target, algorithm="em")
    model = init
    current = monitor(target, model)
    trace.record(StepKind.E_STEP, current, model)
    trace.objectives.append(em_objectives(target, model))

    logger.info("Starting EM fit", components=init.n, tol=config.tol)
    while current.h_qp > config.tol:
        if trace.right_steps >= config.max_right_steps:
            logger.warning("EM fit hit the step cap", steps=trace.right_steps)
            break
        channel, _ = left_step_a(target, model)
        model = em_step(target, model, config)
        trace.right_steps += 1
        current = monitor(target, model)
        trace.record(StepKind.M_STEP, current, model)
        trace.objectives.append(em_objectives(target, model, channel))
    else:
        trace.converged = True

    logger.info("EM fit finished", converged=trace.converged, steps=trace.right_steps, h_qp=current.h_qp)
    return trace
