"""CM algorithm for Gaussian mixtures: Left-step a, Left-step b, Right-step."""

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union

import numpy as np
from scipy.optimize import minimize
from scipy.special import logsumexp, softmax

from ..core.errors import ComponentStarvedError, SupportMismatchError
from ..core.probability import Alphabet, Distribution, gaussian_log_mass
from ..utils.logging import get_logger
from .model import GaussianComponent, MixtureModel, check_initialization, log_responsibilities
from .monitor import monitor, weighted_gain
from .trace import MixtureTrace, StepKind

logger = get_logger(__name__)


@dataclass
class MixtureConfig:
    """Mixture fitting configuration."""

    tol: float = 0.001  # H(Q||P) in bits at which fitting stops
    max_right_steps: int = 200
    inner_tol: float = 1e-9  # Left-step b: max |delta P(y_j)|
    inner_max_iterations: int = 1000
    d_min: float = 0.5  # stddev floor in grid units
    guard_ratio: float = 0.1  # collapse guard trips below guard_ratio / n
    polish: bool = True  # refine weighted moments by exact grid likelihood maximization

    @classmethod
    def from_dict(cls, data: dict) -> "MixtureConfig":
        """Create from dictionary."""
        return cls(**{k: v for k, v in data.items() if hasattr(cls, k)})


@dataclass
class LeftStepB:
    """Outcome of the mixing-weight fixed point."""

    py: Distribution
    iterations: int
    converged: bool
    guard_tripped: bool = False


def left_step_a(target: Distribution, model: MixtureModel) -> Tuple[np.ndarray, Distribution]:
    """
    Construct the Shannon channel P(y_j|x) = P(y_j) P(x|theta_j) / Q(x).

    Args:
        target: Sampling distribution P(X)
        model: Current mixture model

    Returns:
        (channel with shape (components, grid), predicted mixture Q(X))

    Raises:
        UndefinedResponsibilityError: If Q is zero where the target has mass
    """
    log_channel, log_q = log_responsibilities(target, model)
    q = np.exp(log_q)
    return np.exp(log_channel), Distribution(model.grid, q / q.sum())


def left_step_b(
    target: Distribution,
    model: MixtureModel,
    guard: bool = False,
    config: Optional[MixtureConfig] = None,
) -> LeftStepB:
    """
    Iterate P(y_j) <- sum_i P(x_i) P(y_j|x_i) to its fixed point.

    Args:
        target: Sampling distribution P(X)
        model: Mixture model whose likelihoods stay fixed
        guard: Stop early, keeping the last weights, once any P(y_j) drops below guard_ratio / n
        config: Fitting configuration

    Returns:
        LeftStepB with the new weights
    """
    config = config or MixtureConfig()
    floor = config.guard_ratio / model.n
    log_lik = model.log_likelihoods()
    live = target.mass > 0.0
    log_target = np.log(target.mass[live])
    py = model.py.mass.copy()

    for iteration in range(1, config.inner_max_iterations + 1):
        with np.errstate(divide="ignore"):
            log_terms = np.log(py)[:, None] + log_lik[:, live]
        log_q = logsumexp(log_terms, axis=0)
        new_py = np.exp(logsumexp(log_terms - log_q[None, :] + log_target[None, :], axis=1))
        new_py = new_py / new_py.sum()

        if guard and np.any(new_py < floor):
            logger.debug("Collapse guard tripped", iteration=iteration, py=new_py.tolist())
            return LeftStepB(Distribution(model.py.support, py), iteration - 1, False, guard_tripped=True)

        delta = float(np.max(np.abs(new_py - py)))
        py = new_py
        if delta < config.inner_tol:
            return LeftStepB(Distribution(model.py.support, py), iteration, True)

    logger.debug("Left-step b hit its iteration cap", iterations=config.inner_max_iterations)
    return LeftStepB(Distribution(model.py.support, py), config.inner_max_iterations, False)


def _neg_log_likelihood(params: np.ndarray, z: np.ndarray, weights: np.ndarray) -> Tuple[float, np.ndarray]:
    """Weighted negative log-likelihood of a grid-normalized Gaussian and its gradient."""
    center, stddev = params
    exponent = -((z - center) ** 2) / (2.0 * stddev**2)
    share = softmax(exponent)
    value = -float(weights @ (exponent - logsumexp(exponent)))
    d_center = (z - center) / stddev**2
    d_stddev = (z - center) ** 2 / stddev**3
    grad = -np.array([(weights - share) @ d_center, (weights - share) @ d_stddev])
    return value, grad


def _fit_component(
    z: np.ndarray,
    weights: np.ndarray,
    previous: Optional[GaussianComponent],
    d_min: float,
    polish: bool,
) -> GaussianComponent:
    center = float(weights @ z)
    stddev = max(float(np.sqrt(weights @ (z - center) ** 2)), d_min)
    candidates = [np.array([center, stddev])]

    if polish:
        span = float(z[-1] - z[0])
        result = minimize(
            _neg_log_likelihood,
            x0=candidates[0],
            args=(z, weights),
            jac=True,
            method="L-BFGS-B",
            bounds=[(float(z[0]) - span, float(z[-1]) + span), (d_min, None)],
            options={"ftol": 1e-15, "gtol": 1e-10, "maxiter": 500},
        )
        if np.all(np.isfinite(result.x)):
            candidates.insert(0, np.asarray(result.x, dtype=float))

    best = min(candidates, key=lambda p: _neg_log_likelihood(p, z, weights)[0])
    if previous is not None:
        kept = np.array([previous.center, previous.stddev])
        if _neg_log_likelihood(kept, z, weights)[0] <= _neg_log_likelihood(best, z, weights)[0]:
            return previous
    return GaussianComponent(float(best[0]), float(best[1]))


def right_step(
    target: Distribution,
    channel: np.ndarray,
    grid: Alphabet,
    previous: Optional[Sequence[GaussianComponent]] = None,
    d_min: float = MixtureConfig.d_min,
    polish: bool = True,
) -> Tuple[GaussianComponent, ...]:
    """
    Maximize G over the component parameters with the channel held fixed.

    Each component is fitted to the weights w_ij = P(x_i) P(y_j|x_i): weighted moments,
    polished by maximizing sum_i w_ij log P(x_i|theta_j) on the grid, and never worse
    than the previous parameters.

    Args:
        target: Sampling distribution P(X)
        channel: P(y_j|x_i), shape (components, grid)
        grid: Grid alphabet
        previous: Current components, kept where no candidate improves on them
        d_min: Stddev floor
        polish: Refine the moment estimate

    Returns:
        New components

    Raises:
        ComponentStarvedError: If a component receives zero total weight
    """
    if target.support != grid:
        raise SupportMismatchError("target and grid differ")
    channel = np.asarray(channel, dtype=float)
    if channel.ndim != 2 or channel.shape[1] != len(grid):
        raise SupportMismatchError("channel does not match the grid")
    if previous is not None and len(previous) != channel.shape[0]:
        raise SupportMismatchError("previous components do not match the channel")

    z = grid.values
    components = []
    for j, row in enumerate(channel):
        weights = target.mass * row
        total = float(weights.sum())
        if total <= 0.0:
            raise ComponentStarvedError(f"component {j} receives no weight")
        components.append(
            _fit_component(z, weights / total, previous[j] if previous is not None else None, d_min, polish)
        )
    return tuple(components)


def run_cm_mixture(
    target: Union[Distribution, MixtureModel],
    init: MixtureModel,
    config: Optional[MixtureConfig] = None,
) -> MixtureTrace:
    """
    Fit a mixture by Left-steps a and b alternating with Right-steps.

    Args:
        target: Sampling distribution P(X), or the true model generating it
        init: Starting model
        config: Fitting configuration

    Returns:
        MixtureTrace with a monitor record after every step
    """
    config = config or MixtureConfig()
    if isinstance(target, MixtureModel):
        target = target.mixture()
    check_initialization(target, init)

    trace = MixtureTrace(target=target)
    model = init
    guard = True

    logger.info("Starting CM mixture fit", components=init.n, tol=config.tol)
    while True:
        trace.record(StepKind.LEFT_A, monitor(target, model), model)

        outcome = left_step_b(target, model, guard=guard, config=config)
        if not outcome.guard_tripped:
            guard = False
        model = model.with_py(outcome.py)
        current = monitor(target, model)
        trace.record(
            StepKind.LEFT_B,
            current,
            model,
            guard_tripped=outcome.guard_tripped,
            inner_iterations=outcome.iterations,
        )

        if current.h_qp <= config.tol:
            trace.converged = True
            break
        if trace.right_steps >= config.max_right_steps:
            logger.warning("CM mixture fit hit the right-step cap", right_steps=trace.right_steps)
            break

        channel, _ = left_step_a(target, model)
        components = right_step(target, channel, model.grid, model.components, config.d_min, config.polish)
        model = model.with_components(components)
        g_held = weighted_gain(target, channel, model.log_likelihoods())
        trace.right_steps += 1
        trace.record(
            StepKind.RIGHT,
            monitor(target, model),
            model,
            g_held=g_held,
            h_qp_held=current.r_q - g_held,
        )
        logger.debug("Right-step done", right_steps=trace.right_steps, h_qp=trace.steps[-1].monitor.h_qp)

    logger.info(
        "CM mixture fit finished",
        converged=trace.converged,
        right_steps=trace.right_steps,
        h_qp=trace.final_monitor.h_qp,
    )
    return trace
