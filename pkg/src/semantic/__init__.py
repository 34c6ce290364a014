"""Truth functions, semantic Bayes and semantic information measures."""

from .measures import (
    SemanticMutualInfo,
    log_likelihood_ratio,
    log_normalized_likelihood,
    semantic_info_point,
    semantic_kl_info,
    semantic_mutual_info,
)
from .truth import (
    ConfidenceLevels,
    NoConfidenceReport,
    SampleCounts,
    SemanticChannel,
    TruthRow,
    confidence_truth,
    crisp_row,
    gaussian_truth_row,
    logical_probability,
    matched_semantic_channel,
    no_confidence_from_channel,
    optimize_truth_row_from_channel,
    optimize_truth_row_from_sampling,
    semantic_bayes,
    transfer_likelihood,
)

__all__ = [
    "ConfidenceLevels",
    "NoConfidenceReport",
    "SampleCounts",
    "SemanticChannel",
    "SemanticMutualInfo",
    "TruthRow",
    "confidence_truth",
    "crisp_row",
    "gaussian_truth_row",
    "log_likelihood_ratio",
    "log_normalized_likelihood",
    "logical_probability",
    "matched_semantic_channel",
    "no_confidence_from_channel",
    "optimize_truth_row_from_channel",
    "optimize_truth_row_from_sampling",
    "semantic_bayes",
    "semantic_info_point",
    "semantic_kl_info",
    "semantic_mutual_info",
    "transfer_likelihood",
]
