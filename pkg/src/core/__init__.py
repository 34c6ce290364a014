"""Discrete probability and information primitives."""

from .errors import CMError
from .information import (
    SATURATED_BITS,
    conditional_entropy,
    entropy,
    generalized_entropy,
    is_saturated,
    kl_divergence,
    mutual_information,
)
from .probability import (
    Alphabet,
    Channel,
    Distribution,
    JointStats,
    channel_stats,
    discretized_gaussian,
)

__all__ = [
    "Alphabet",
    "CMError",
    "Channel",
    "Distribution",
    "JointStats",
    "SATURATED_BITS",
    "channel_stats",
    "conditional_entropy",
    "discretized_gaussian",
    "entropy",
    "generalized_entropy",
    "is_saturated",
    "kl_divergence",
    "mutual_information",
]
