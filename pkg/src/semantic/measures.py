"""Semantic information measures in bits."""

from typing import Hashable, Iterable, NamedTuple, Sequence

import numpy as np

from ..core.errors import InvalidParameterError, SupportMismatchError
from ..core.information import SATURATED_BITS, clamp_bits, weighted_log_ratio
from ..core.probability import PROB_TOL, Channel, Distribution, channel_stats
from .truth import SampleCounts, SemanticChannel, TruthRow, logical_probability, semantic_bayes


class SemanticMutualInfo(NamedTuple):
    """Semantic mutual information I(X;Theta) and the posterior generalized entropy H(X|Theta)."""

    i_x_theta: float
    h_x_given_theta: float


def _total(terms: Iterable[float]) -> float:
    """Sum information terms, letting a saturated term dominate."""
    terms = list(terms)
    if any(t <= -SATURATED_BITS for t in terms):
        return -SATURATED_BITS
    if any(t >= SATURATED_BITS for t in terms):
        return SATURATED_BITS
    return clamp_bits(float(sum(terms)))


def semantic_info_point(prior: Distribution, truth: TruthRow, x: Hashable) -> float:
    """
    Information conveyed by hypothesis theta_j about one symbol.

    Args:
        prior: Source P(X)
        truth: Truth function T(theta_j|X)
        x: Symbol label

    Returns:
        log2(T(theta_j|x) / T(theta_j)); -SATURATED_BITS when T(theta_j|x) = 0
    """
    _, logical = semantic_bayes(prior, truth)
    return weighted_log_ratio(np.ones(1), np.array([truth[x]]), np.array([logical]))


def semantic_kl_info(sampling: Distribution, prior: Distribution, truth: TruthRow) -> float:
    """
    Semantic KL information: the sampling-averaged semantic information of one hypothesis.

    Equals KL(sampling || prior) - KL(sampling || likelihood).
    """
    if sampling.support != prior.support:
        raise SupportMismatchError("sampling distribution and prior use different alphabets")
    _, logical = semantic_bayes(prior, truth)
    return weighted_log_ratio(sampling.mass, truth.values, np.full(len(prior), logical))


def semantic_mutual_info(prior: Distribution, shannon: Channel, sem: SemanticChannel) -> SemanticMutualInfo:
    """
    Semantic mutual information of a semantic channel used over a Shannon channel.

    Args:
        prior: Source P(X)
        shannon: Channel P(Y|X) choosing the hypotheses
        sem: Semantic channel, one truth row per output of the Shannon channel

    Returns:
        SemanticMutualInfo with I(X;Theta) and H(X|Theta), so that I = H(X) - H(X|Theta)
    """
    if sem.support != prior.support:
        raise SupportMismatchError("semantic channel is defined over a different alphabet")
    if len(sem) != len(shannon.outputs):
        raise SupportMismatchError(
            f"semantic channel has {len(sem)} rows for {len(shannon.outputs)} hypotheses"
        )

    joint = channel_stats(prior, shannon).joint
    info_terms = []
    entropy_terms = []
    for j, truth in enumerate(sem.rows):
        weights = joint[:, j]
        if not np.any(weights > 0.0):
            continue
        likelihood, logical = semantic_bayes(prior, truth)
        info_terms.append(weighted_log_ratio(weights, truth.values, np.full(len(prior), logical)))
        entropy_terms.append(-weighted_log_ratio(weights, likelihood.mass, np.ones(len(prior))))

    return SemanticMutualInfo(_total(info_terms), _total(entropy_terms))


def log_normalized_likelihood(counts: SampleCounts, prior: Distribution, sem: SemanticChannel) -> float:
    """
    Log normalized likelihood of counted samples: sum_ij N_ij log2(P(x_i|theta_j) / P(x_i)).

    Args:
        counts: Sample counts N_ij
        prior: Source P(X)
        sem: Semantic channel, one row per counted hypothesis

    Returns:
        Value in bits; -SATURATED_BITS if a counted symbol has zero likelihood
    """
    if counts.inputs != prior.support or sem.support != prior.support:
        raise SupportMismatchError("counts, prior and semantic channel must share the input alphabet")
    if len(sem) != len(counts.outputs):
        raise SupportMismatchError("semantic channel rows do not match the counted hypotheses")

    terms = []
    for j, truth in enumerate(sem.rows):
        n_j = counts.counts[:, j].astype(float)
        if not np.any(n_j > 0.0):
            continue
        logical = logical_probability(prior, truth)
        if logical <= 0.0:
            return -SATURATED_BITS
        terms.append(weighted_log_ratio(n_j, truth.values, np.full(len(prior), logical)))
    return _total(terms)


def log_likelihood_ratio(
    prior: Distribution,
    sampling_by_region: Sequence[Distribution],
    region_weights: Sequence[float],
    sem_pos: TruthRow,
    sem_neg: TruthRow,
    n: int,
) -> float:
    """
    Log likelihood ratio of a binary test without a fixed partition.

    Args:
        prior: Source P(X)
        sampling_by_region: (P(X|C_1), P(X|C_0)), the sampling distributions of the
            positive and negative regions
        region_weights: (P(C_1), P(C_0)), summing to 1
        sem_pos: Truth row of the positive hypothesis theta_1
        sem_neg: Truth row of the negative hypothesis theta_0
        n: Sample size N

    Returns:
        log2 r_L in bits, saturating when a positively weighted likelihood is zero
    """
    if len(sampling_by_region) != 2 or len(region_weights) != 2:
        raise InvalidParameterError("a binary test has exactly two regions")
    w_pos, w_neg = (float(w) for w in region_weights)
    if min(w_pos, w_neg) < 0.0 or abs(w_pos + w_neg - 1.0) > PROB_TOL:
        raise InvalidParameterError("region weights must be non-negative and sum to 1")
    if n < 0:
        raise InvalidParameterError(f"sample size must be non-negative, got {n}")

    sampling_pos, sampling_neg = sampling_by_region
    for sampling in sampling_by_region:
        if sampling.support != prior.support:
            raise SupportMismatchError("region sampling distributions must share the prior's alphabet")

    like_pos, _ = semantic_bayes(prior, sem_pos)
    like_neg, _ = semantic_bayes(prior, sem_neg)
    return _total(
        [
            weighted_log_ratio(n * w_pos * sampling_pos.mass, like_pos.mass, like_neg.mass),
            weighted_log_ratio(n * w_neg * sampling_neg.mass, like_neg.mass, like_pos.mass),
        ]
    )
