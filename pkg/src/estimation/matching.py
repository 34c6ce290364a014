"""Right-step and Left-step of the CM algorithm for tests and estimations."""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..core.errors import DegeneratePartitionError, SupportMismatchError
from ..core.information import SATURATED_BITS, mutual_information, saturating_log2
from ..core.probability import Channel
from ..semantic.measures import semantic_mutual_info
from ..semantic.truth import SemanticChannel, TruthRow, optimize_truth_row_from_channel
from .scenario import NeutralMode, Partition, TestScenario


@dataclass(frozen=True, eq=False)
class MatchedSemantics:
    """Shannon channel of a partition with the semantic channel matched to it."""

    channel: Channel
    sem: SemanticChannel
    logical_probs: np.ndarray  # T(theta_j)
    info_matrix: np.ndarray  # I_ij, shape (classes, labels)
    curves: np.ndarray  # I(X;theta_j|z), shape (labels, cells)
    i_x_theta: float
    shannon_mi: float


def right_step(scenario: TestScenario, part: Partition) -> MatchedSemantics:
    """
    Match the semantic channel to the Shannon channel of a partition.

    Args:
        scenario: Test scenario
        part: Current partition of the grid

    Returns:
        MatchedSemantics with truth rows, logical probabilities, information
        matrix and per-cell information curves

    Raises:
        DegeneratePartitionError: If a non-neutral label covers no cell
    """
    if len(part.labels) != len(scenario.grid) or part.n_labels != scenario.n_labels:
        raise SupportMismatchError("partition does not fit the scenario's grid and labels")
    unused = part.unused_labels(scenario.neutral_label)
    if unused:
        raise DegeneratePartitionError(f"labels {unused} cover no grid cell")

    # P(y_j|x_i): mass of P(Z|x_i) inside the region of label j
    matrix = part.indicator() @ scenario.cond_matrix.T
    channel = Channel(scenario.classes, scenario.label_alphabet, matrix)

    rows = []
    for j in range(scenario.n_labels):
        neutral = j == scenario.neutral_label
        if neutral and (scenario.neutral_mode is NeutralMode.TAUTOLOGY or not np.any(matrix[j] > 0.0)):
            rows.append(TruthRow.tautology(scenario.classes))
        else:
            rows.append(optimize_truth_row_from_channel(matrix[j], scenario.classes))
    sem = SemanticChannel(tuple(rows))

    truth = sem.matrix.T  # (classes, labels)
    logical = scenario.prior.mass @ truth
    info = np.clip(saturating_log2(truth) - saturating_log2(logical)[None, :], -SATURATED_BITS, SATURATED_BITS)
    curves = (scenario.posterior_matrix().T @ info).T

    return MatchedSemantics(
        channel=channel,
        sem=sem,
        logical_probs=logical,
        info_matrix=info,
        curves=curves,
        i_x_theta=semantic_mutual_info(scenario.prior, channel, sem).i_x_theta,
        shannon_mi=mutual_information(scenario.prior, channel),
    )


def left_step(curves: np.ndarray, neutral_label: Optional[int] = None) -> Partition:
    """
    Re-partition the grid by the largest information curve per cell.

    Args:
        curves: Information curves, shape (labels, cells)
        neutral_label: Label whose curve is pinned at 0

    Returns:
        Partition; ties go to the lower label index
    """
    curves = np.array(curves, dtype=float, copy=True)
    if neutral_label is not None:
        curves[neutral_label] = 0.0
    return Partition(tuple(int(j) for j in np.argmax(curves, axis=0)), curves.shape[0])


def minimum_error_partition(scenario: TestScenario) -> Partition:
    """
    Partition labelling each cell with its most probable class.

    Classes map to the non-neutral labels in order.
    """
    label_of_class = scenario.non_neutral_labels()
    best_class = np.argmax(scenario.posterior_matrix(), axis=0)
    return Partition(tuple(label_of_class[i] for i in best_class), scenario.n_labels)
