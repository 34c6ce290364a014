"""Entropies, divergences and mutual information in bits."""

import numpy as np
from scipy.special import xlogy

from .errors import DivergenceUndefinedError, SupportMismatchError
from .probability import Channel, Distribution, channel_stats

LN2 = float(np.log(2.0))

# Probabilities below this are treated as exact zeros inside log arguments
PROB_FLOOR = 1e-300

# Stand-in for infinite information so traces stay totally ordered
SATURATED_BITS = 1e12


def is_saturated(value: float) -> bool:
    """True when a value stands for +/- infinite information."""
    return abs(value) >= SATURATED_BITS


def clamp_bits(value: float) -> float:
    """Clamp an information value into the saturating range."""
    return float(np.clip(value, -SATURATED_BITS, SATURATED_BITS))


def saturating_log2(x: np.ndarray) -> np.ndarray:
    """Elementwise log2 where zero maps to -SATURATED_BITS."""
    x = np.asarray(x, dtype=float)
    out = np.full(x.shape, -SATURATED_BITS)
    positive = x >= PROB_FLOOR
    out[positive] = np.log2(x[positive])
    return out


def weighted_log_ratio(weights: np.ndarray, numerator: np.ndarray, denominator: np.ndarray) -> float:
    """
    Sum of weights * log2(numerator / denominator) with saturation.

    Zero-weight terms contribute nothing; a zero numerator or denominator under
    positive weight saturates the result instead of raising.
    """
    weights = np.asarray(weights, dtype=float)
    live = weights > 0.0
    if not np.any(live):
        return 0.0
    num = np.asarray(numerator, dtype=float)[live]
    den = np.asarray(denominator, dtype=float)[live]
    if np.any(num < PROB_FLOOR):
        return -SATURATED_BITS
    if np.any(den < PROB_FLOOR):
        return SATURATED_BITS
    return clamp_bits(float(np.sum(weights[live] * (np.log2(num) - np.log2(den)))))


def _masked(mass: np.ndarray) -> np.ndarray:
    return np.where(mass < PROB_FLOOR, 0.0, mass)


def entropy(p: Distribution) -> float:
    """
    Shannon entropy in bits, with 0 log 0 = 0.

    Args:
        p: Distribution

    Returns:
        -sum p log2 p
    """
    mass = _masked(p.mass)
    return float(-np.sum(xlogy(mass, mass)) / LN2)


def generalized_entropy(p: Distribution, q: Distribution) -> float:
    """Cross entropy -sum p log2 q (the generalized entropy of X under prediction q)."""
    if p.support != q.support:
        raise SupportMismatchError("distributions are defined over different alphabets")
    mass_p = _masked(p.mass)
    live = mass_p > 0.0
    if np.any(q.mass[live] < PROB_FLOOR):
        raise DivergenceUndefinedError("prediction is zero where the distribution has mass")
    return float(-np.sum(mass_p[live] * np.log2(q.mass[live])))


def kl_divergence(p: Distribution, q: Distribution) -> float:
    """
    Relative entropy sum p log2(p / q), averaged under p.

    Args:
        p: Reference (true) distribution
        q: Predicted distribution

    Returns:
        Divergence in bits, >= 0

    Raises:
        SupportMismatchError: If the supports differ
        DivergenceUndefinedError: If q is zero where p is positive
    """
    if p.support != q.support:
        raise SupportMismatchError("distributions are defined over different alphabets")
    mass_p = _masked(p.mass)
    live = mass_p > 0.0
    if np.any(q.mass[live] < PROB_FLOOR):
        raise DivergenceUndefinedError("q is zero where p has mass")
    value = float(np.sum(mass_p[live] * (np.log2(mass_p[live]) - np.log2(q.mass[live]))))
    return max(value, 0.0)


def mutual_information(prior: Distribution, channel: Channel) -> float:
    """
    Shannon mutual information I(X;Y) in bits.

    Args:
        prior: Source P(X)
        channel: Channel P(Y|X)

    Returns:
        sum_xy P(x,y) log2(P(y|x) / P(y))
    """
    stats = channel_stats(prior, channel)
    joint = _masked(stats.joint)
    live = joint > 0.0
    transition = channel.matrix.T  # (x, y)
    p_y = np.broadcast_to(stats.marginal_y.mass, joint.shape)
    value = float(np.sum(joint[live] * (np.log2(transition[live]) - np.log2(p_y[live]))))
    return max(value, 0.0)


def conditional_entropy(prior: Distribution, channel: Channel) -> float:
    """Posterior entropy H(X|Y) in bits."""
    stats = channel_stats(prior, channel)
    joint = _masked(stats.joint)
    live = joint > 0.0
    p_y = np.broadcast_to(stats.marginal_y.mass, joint.shape)
    return float(-np.sum(joint[live] * (np.log2(joint[live]) - np.log2(p_y[live]))))
