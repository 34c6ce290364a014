"""R(G) and R(D) functions."""

from .binary import binary_entropy, rg_binary_closed_form, symmetric_binary_payoff
from .solver import (
    PayoffMatrix,
    RDPoint,
    RGCurve,
    RGPoint,
    RGSolverConfig,
    information_efficiency,
    payoff_from_semantic_channel,
    rd_point,
    rg_branch_extremes,
    rg_curve,
    rg_point,
)

__all__ = [
    "PayoffMatrix",
    "RDPoint",
    "RGCurve",
    "RGPoint",
    "RGSolverConfig",
    "binary_entropy",
    "information_efficiency",
    "payoff_from_semantic_channel",
    "rd_point",
    "rg_binary_closed_form",
    "rg_branch_extremes",
    "rg_curve",
    "rg_point",
    "symmetric_binary_payoff",
]
