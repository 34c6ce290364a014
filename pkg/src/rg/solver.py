"""Parametric R(G) and R(D) solver."""

from dataclasses import dataclass, field
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import brentq
from scipy.special import logsumexp

from ..core.errors import (
    ConvergenceError,
    DomainError,
    InvalidParameterError,
    SupportMismatchError,
    UndefinedEfficiencyError,
)
from ..core.information import LN2, clamp_bits, saturating_log2
from ..core.probability import Alphabet, Distribution
from ..semantic.truth import SemanticChannel
from ..utils.logging import get_logger

logger = get_logger(__name__)


@dataclass
class RGSolverConfig:
    """Alternating solver configuration."""

    tol: float = 1e-10  # max |delta P(y_j)| at convergence
    max_iterations: int = 100_000
    branch_tol: float = 1e-6  # bits in R when solving for G+ / G-
    s_bracket_max: float = 256.0


@dataclass(frozen=True, eq=False)
class PayoffMatrix:
    """Payoff I_ij in bits for every (x_i, y_j) pair."""

    inputs: Alphabet
    outputs: Alphabet
    entries: np.ndarray  # shape (len(inputs), len(outputs))

    def __post_init__(self) -> None:
        entries = np.array(self.entries, dtype=float, copy=True)
        if entries.shape != (len(self.inputs), len(self.outputs)):
            raise SupportMismatchError(f"payoff table shape {entries.shape} does not match the alphabets")
        if not np.all(np.isfinite(entries)):
            raise InvalidParameterError("payoff entries must be finite (use the saturating convention)")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_distortion(cls, inputs: Alphabet, outputs: Alphabet, distortion: np.ndarray) -> "PayoffMatrix":
        """Payoff as negated distortion."""
        return cls(inputs, outputs, -np.asarray(distortion, dtype=float))


@dataclass(frozen=True, eq=False)
class RGPoint:
    """One point of the R(G) function."""

    s: float
    g: float
    r: float
    py: Distribution
    lambdas: np.ndarray
    iterations: int = 0

    @property
    def efficiency(self) -> float:
        """Information efficiency G/R at this point."""
        return information_efficiency(self.g, self.r)


class RDPoint(NamedTuple):
    """One point of the classical R(D) function (D in distortion units, R in bits)."""

    d: float
    r: float


@dataclass
class RGCurve:
    """R(G) points ordered by s, with the branch extremes for a target rate."""

    points: List[RGPoint] = field(default_factory=list)
    g_plus: Optional[float] = None
    g_minus: Optional[float] = None
    r_target: Optional[float] = None

    def efficiencies(self) -> List[float]:
        """G/R per point; NaN where R vanishes."""
        values = []
        for point in self.points:
            try:
                values.append(point.efficiency)
            except UndefinedEfficiencyError:
                values.append(float("nan"))
        return values

    def slopes(self) -> List[Tuple[float, float]]:
        """(midpoint s, finite-difference dR/dG) between neighbouring points."""
        pairs = []
        for p1, p2 in zip(self.points, self.points[1:]):
            if p2.g != p1.g:
                pairs.append(((p1.s + p2.s) / 2.0, (p2.r - p1.r) / (p2.g - p1.g)))
        return pairs


def information_efficiency(g: float, r: float) -> float:
    """
    Information efficiency G/R.

    Raises:
        UndefinedEfficiencyError: If R = 0
    """
    if r <= 0.0:
        raise UndefinedEfficiencyError("information efficiency is undefined at R = 0")
    return g / r


def payoff_from_semantic_channel(prior: Distribution, sem: SemanticChannel, outputs: Optional[Alphabet] = None) -> PayoffMatrix:
    """
    Semantic information payoff I_ij = log2(T(theta_j|x_i) / T(theta_j)).

    Args:
        prior: Source P(X)
        sem: Semantic channel, one row per hypothesis
        outputs: Hypothesis labels (defaults to 0..n-1)

    Returns:
        PayoffMatrix; zero truth values saturate to -SATURATED_BITS
    """
    if sem.support != prior.support:
        raise SupportMismatchError("semantic channel is defined over a different alphabet")
    truth = sem.matrix.T  # (x, y)
    logical = prior.mass @ truth
    outputs = outputs or Alphabet(tuple(range(len(sem))))
    return PayoffMatrix(prior.support, outputs, saturating_log2(truth) - saturating_log2(logical)[None, :])


def _initial_py(payoff_outputs: Alphabet, py_init: Optional[Distribution]) -> Distribution:
    if py_init is None:
        return Distribution.uniform(payoff_outputs)
    if py_init.support != payoff_outputs:
        raise SupportMismatchError("initial P(Y) is defined over a different alphabet")
    if np.any(py_init.mass <= 0.0):
        raise InvalidParameterError("initial P(Y) must be strictly positive")
    return py_init


def _alternate(
    prior: Distribution,
    log_kernel: np.ndarray,
    py: Distribution,
    config: RGSolverConfig,
) -> Tuple[np.ndarray, np.ndarray, np.ndarray, int]:
    """
    Alternate channel and output-marginal updates to their fixed point.

    Returns:
        (channel (x, y), py mass, natural-log lambdas, iterations)
    """
    with np.errstate(divide="ignore"):
        mass = py.mass.copy()
        for iteration in range(1, config.max_iterations + 1):
            log_joint = np.log(mass)[None, :] + log_kernel
            log_lambda = logsumexp(log_joint, axis=1)
            channel = np.exp(log_joint - log_lambda[:, None])
            new_mass = prior.mass @ channel
            residual = float(np.max(np.abs(new_mass - mass)))
            mass = new_mass / new_mass.sum()
            if residual < config.tol:
                break
        else:
            raise ConvergenceError(
                "alternating solver did not converge", residual=residual, iterations=config.max_iterations
            )

        log_joint = np.log(mass)[None, :] + log_kernel
        log_lambda = logsumexp(log_joint, axis=1)
        channel = np.exp(log_joint - log_lambda[:, None])
    return channel, mass, log_lambda, iteration


def rg_point(
    prior: Distribution,
    payoff: PayoffMatrix,
    s: float,
    py_init: Optional[Distribution] = None,
    config: Optional[RGSolverConfig] = None,
) -> RGPoint:
    """
    Solve the R(G) parametric equations at one value of s.

    Args:
        prior: Source P(X)
        payoff: Payoff I_ij in bits
        s: Trade-off parameter (slope dR/dG)
        py_init: Strictly positive starting P(Y); uniform when omitted
        config: Solver configuration

    Returns:
        RGPoint with G(s), R(s) = s G(s) - sum_i P(x_i) log2 lambda_i, P(Y) and lambda

    Raises:
        ConvergenceError: If the alternation exhausts its iteration budget
    """
    config = config or RGSolverConfig()
    if payoff.inputs != prior.support:
        raise SupportMismatchError("payoff rows do not match the prior's alphabet")
    py = _initial_py(payoff.outputs, py_init)

    channel, mass, log_lambda, iterations = _alternate(prior, s * LN2 * payoff.entries, py, config)
    g = clamp_bits(float(np.sum(prior.mass[:, None] * channel * payoff.entries)))
    r = max(s * g - float(prior.mass @ log_lambda) / LN2, 0.0)

    logger.debug("R(G) point solved", s=s, g=g, r=r, iterations=iterations)
    return RGPoint(
        s=s,
        g=g,
        r=r,
        py=Distribution(payoff.outputs, mass),
        lambdas=np.exp(log_lambda),
        iterations=iterations,
    )


def rd_point(
    prior: Distribution,
    distortion: np.ndarray,
    s: float,
    py_init: Optional[Distribution] = None,
    config: Optional[RGSolverConfig] = None,
) -> RDPoint:
    """
    Classical parametric R(D) at s <= 0, with kernel exp(s d_ij).

    Args:
        prior: Source P(X)
        distortion: Non-negative distortion table d_ij, shape (len(X), len(Y))
        s: Slope parameter (<= 0)
        py_init: Strictly positive starting P(Y); uniform when omitted
        config: Solver configuration

    Returns:
        RDPoint (D, R) with R in bits
    """
    if s > 0:
        raise InvalidParameterError(f"R(D) requires s <= 0, got {s}")
    config = config or RGSolverConfig()
    distortion = np.asarray(distortion, dtype=float)
    if distortion.ndim != 2 or distortion.shape[0] != len(prior):
        raise SupportMismatchError("distortion rows do not match the prior's alphabet")
    if np.any(distortion < 0) or not np.all(np.isfinite(distortion)):
        raise InvalidParameterError("distortions must be finite and non-negative")

    outputs = py_init.support if py_init is not None else Alphabet(tuple(range(distortion.shape[1])))
    py = _initial_py(outputs, py_init)
    channel, _, log_lambda, iterations = _alternate(prior, s * distortion, py, config)
    d = float(np.sum(prior.mass[:, None] * channel * distortion))
    r = max((s * d - float(prior.mass @ log_lambda)) / LN2, 0.0)

    logger.debug("R(D) point solved", s=s, d=d, r=r, iterations=iterations)
    return RDPoint(d=d, r=r)


def _solve_branch(
    prior: Distribution, payoff: PayoffMatrix, r_target: float, sign: float, config: RGSolverConfig
) -> float:
    """G on one branch of R(G) where R equals r_target."""

    def excess(magnitude: float) -> float:
        return rg_point(prior, payoff, sign * magnitude, config=config).r - r_target

    upper = 1.0
    while excess(upper) < 0.0:
        upper *= 2.0
        if upper > config.s_bracket_max:
            raise DomainError(f"rate {r_target} bits is not reachable on the {'+' if sign > 0 else '-'} branch")
    magnitude = brentq(excess, 0.0, upper, xtol=1e-12, rtol=1e-12)
    point = rg_point(prior, payoff, sign * magnitude, config=config)
    if abs(point.r - r_target) > config.branch_tol:
        raise ConvergenceError("branch search missed the target rate", residual=abs(point.r - r_target), iterations=0)
    return point.g


def rg_branch_extremes(
    prior: Distribution, payoff: PayoffMatrix, r_target: float, config: Optional[RGSolverConfig] = None
) -> Tuple[float, float]:
    """
    Largest and smallest G achievable at rate r_target.

    Returns:
        (G+, G-) from the s > 0 and s < 0 branches
    """
    if r_target <= 0.0:
        raise InvalidParameterError("target rate must be positive")
    config = config or RGSolverConfig()
    return (
        _solve_branch(prior, payoff, r_target, 1.0, config),
        _solve_branch(prior, payoff, r_target, -1.0, config),
    )


def rg_curve(
    prior: Distribution,
    payoff: PayoffMatrix,
    s_values: Sequence[float],
    py_init: Optional[Distribution] = None,
    config: Optional[RGSolverConfig] = None,
    r_target: Optional[float] = None,
) -> RGCurve:
    """
    Sweep the R(G) function over a range of s.

    Args:
        prior: Source P(X)
        payoff: Payoff I_ij in bits
        s_values: Values of s to solve at (sorted on output)
        py_init: Starting P(Y) shared by every point
        config: Solver configuration
        r_target: When given, also solve for G+ and G- at this rate

    Returns:
        RGCurve
    """
    config = config or RGSolverConfig()
    points = [rg_point(prior, payoff, float(s), py_init, config) for s in sorted(s_values)]
    curve = RGCurve(points=points, r_target=r_target)
    if r_target is not None:
        curve.g_plus, curve.g_minus = rg_branch_extremes(prior, payoff, r_target, config)

    logger.info("R(G) curve computed", points=len(points), g_plus=curve.g_plus, g_minus=curve.g_minus)
    return curve
