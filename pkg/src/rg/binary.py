"""Binary-source R(G) closed form and the symmetric binary payoff."""

import numpy as np

from ..core.errors import DomainError, InvalidParameterError
from ..core.information import entropy
from ..core.probability import Alphabet, Distribution
from ..semantic.truth import SemanticChannel
from .solver import PayoffMatrix, payoff_from_semantic_channel


def binary_entropy(p: float) -> float:
    """H2(p) in bits."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"binary entropy needs p in [0, 1], got {p}")
    return entropy(Distribution(Alphabet((0, 1)), np.array([p, 1.0 - p])))


def rg_binary_closed_form(g: float, a: float, b: float, prior: Distribution) -> float:
    """
    R(G) of a binary source with a symmetric payoff.

    Args:
        g: Semantic mutual information G, strictly between a and b
        a: Payoff of a counterexample (bits)
        b: Payoff of a correct hypothesis (bits)
        prior: Binary source

    Returns:
        R = H(X) - H2((h - G1) / (2h)) with h = (b - a)/2, c = (a + b)/2 and G1 = G - c

    Raises:
        DomainError: If G is outside (a, b)
    """
    if len(prior) != 2:
        raise InvalidParameterError("closed form applies to binary sources only")
    if not a < g < b:
        raise DomainError(f"G = {g} lies outside ({a}, {b})")
    h = (b - a) / 2.0
    g1 = g - (a + b) / 2.0
    return max(entropy(prior) - binary_entropy((h - g1) / (2.0 * h)), 0.0)


def symmetric_binary_payoff(counter_truth: float, prior: Distribution) -> PayoffMatrix:
    """
    Payoff of two mirrored hypotheses each true of one symbol.

    Args:
        counter_truth: Truth value a hypothesis keeps on its counterexample, in [0, 1)
        prior: Binary source

    Returns:
        PayoffMatrix with b = I_00 = I_11 and a = I_01 = I_10 for a uniform prior
    """
    if len(prior) != 2:
        raise InvalidParameterError("symmetric payoff needs a binary source")
    if not 0.0 <= counter_truth < 1.0:
        raise InvalidParameterError(f"counterexample truth value must lie in [0, 1), got {counter_truth}")
    sem = SemanticChannel.from_matrix(prior.support, [[1.0, counter_truth], [counter_truth, 1.0]])
    return payoff_from_semantic_channel(prior, sem, outputs=prior.support)
