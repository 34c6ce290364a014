"""Truth functions, semantic channels and semantic Bayesian inference."""

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from ..core.errors import (
    EmptyFuzzySetError,
    EmptyHypothesisError,
    InvalidParameterError,
    SupportMismatchError,
    UndefinedConfidenceError,
    UndefinedRatioError,
)
from ..core.information import PROB_FLOOR, SATURATED_BITS
from ..core.probability import PROB_TOL, Alphabet, Channel, Distribution


@dataclass(frozen=True, eq=False)
class TruthRow:
    """Truth function T(theta_j|X) of one hypothesis, valued in [0, 1]."""

    support: Alphabet
    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=float, copy=True)
        if values.shape != (len(self.support),):
            raise SupportMismatchError(
                f"truth row has shape {values.shape} for an alphabet of {len(self.support)}"
            )
        if np.any(~np.isfinite(values)) or np.any(values < -PROB_TOL) or np.any(values > 1.0 + PROB_TOL):
            raise InvalidParameterError("truth values must lie in [0, 1]")
        values = np.clip(values, 0.0, 1.0)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def tautology(cls, support: Alphabet) -> "TruthRow":
        """Hypothesis true of every symbol."""
        return cls(support, np.ones(len(support)))

    @property
    def is_optimized(self) -> bool:
        """True when the row peaks at exactly 1 (max-normalized)."""
        return abs(float(self.values.max()) - 1.0) <= PROB_TOL

    def scaled(self, k: float) -> "TruthRow":
        """Row multiplied by k in (0, 1]."""
        if not 0.0 < k <= 1.0:
            raise InvalidParameterError(f"scale must lie in (0, 1], got {k}")
        return TruthRow(self.support, self.values * k)

    def __getitem__(self, label) -> float:
        return float(self.values[self.support.index(label)])


@dataclass(frozen=True, eq=False)
class SemanticChannel:
    """One truth row per hypothesis; rows need not sum to anything across hypotheses."""

    rows: Tuple[TruthRow, ...]

    def __post_init__(self) -> None:
        rows = tuple(self.rows)
        if not rows:
            raise InvalidParameterError("semantic channel needs at least one truth row")
        support = rows[0].support
        if any(row.support != support for row in rows):
            raise SupportMismatchError("truth rows must share one alphabet")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_matrix(cls, support: Alphabet, matrix: Iterable[Iterable[float]]) -> "SemanticChannel":
        """Build from a (hypotheses x symbols) table of truth values."""
        return cls(tuple(TruthRow(support, row) for row in np.asarray(matrix, dtype=float)))

    @property
    def support(self) -> Alphabet:
        return self.rows[0].support

    @property
    def matrix(self) -> np.ndarray:
        """Truth table, shape (hypotheses, symbols)."""
        return np.vstack([row.values for row in self.rows])

    def __len__(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class ConfidenceLevels:
    """No-confidence levels b' = 1 - |b|, one per hypothesis."""

    b_prime: Tuple[float, ...]

    def __post_init__(self) -> None:
        if any(not 0.0 <= b <= 1.0 for b in self.b_prime):
            raise InvalidParameterError("no-confidence levels must lie in [0, 1]")

    @classmethod
    def from_confidence(cls, b: Sequence[float]) -> "ConfidenceLevels":
        """Convert confidence levels b in [-1, 1] into no-confidence levels."""
        if any(abs(v) > 1.0 for v in b):
            raise InvalidParameterError("confidence levels must lie in [-1, 1]")
        return cls(tuple(1.0 - abs(v) for v in b))


@dataclass(frozen=True, eq=False)
class SampleCounts:
    """Counts N_ij of symbol x_i observed under hypothesis y_j."""

    inputs: Alphabet
    outputs: Alphabet
    counts: np.ndarray  # shape (len(inputs), len(outputs))

    def __post_init__(self) -> None:
        counts = np.array(self.counts, copy=True)
        if counts.shape != (len(self.inputs), len(self.outputs)):
            raise SupportMismatchError(f"count table shape {counts.shape} does not match the alphabets")
        if np.any(counts < 0) or np.any(counts != np.round(counts)):
            raise InvalidParameterError("counts must be non-negative integers")
        counts = counts.astype(np.int64)
        counts.setflags(write=False)
        object.__setattr__(self, "counts", counts)

    @property
    def totals(self) -> np.ndarray:
        """N_j per hypothesis."""
        return self.counts.sum(axis=0)

    @property
    def total(self) -> int:
        """N overall."""
        return int(self.counts.sum())

    def sampling(self, j: int) -> Distribution:
        """Empirical sampling distribution P(X|y_j) = N_ij / N_j."""
        return Distribution.from_weights(self.inputs, self.counts[:, j])

    def empirical_prior(self) -> Distribution:
        """Empirical source P(X) = sum_j N_ij / N."""
        return Distribution.from_weights(self.inputs, self.counts.sum(axis=1))

    def empirical_channel(self) -> Channel:
        """Empirical channel P(y_j|x_i) = N_ij / N_i (symbols with no counts are unsupported)."""
        per_symbol = self.counts.sum(axis=1, keepdims=True)
        if np.any(per_symbol == 0):
            raise UndefinedRatioError("a symbol has no observations; its channel column is undefined")
        return Channel(self.inputs, self.outputs, (self.counts / per_symbol).T)


@dataclass(frozen=True)
class NoConfidenceReport:
    """Optimized no-confidence levels of a binary test and the matching likelihood ratios."""

    b1_prime: float
    b0_prime: float
    lr_plus: float
    lr_minus: float

    @property
    def levels(self) -> ConfidenceLevels:
        """Levels ordered (y_0, y_1)."""
        return ConfidenceLevels((self.b0_prime, self.b1_prime))


def _check_support(a: Alphabet, b: Alphabet) -> None:
    if a != b:
        raise SupportMismatchError("arguments are defined over different alphabets")


def logical_probability(prior: Distribution, truth: TruthRow) -> float:
    """T(theta_j) = sum_i P(x_i) T(theta_j|x_i)."""
    _check_support(prior.support, truth.support)
    return float(prior.mass @ truth.values)


def semantic_bayes(prior: Distribution, truth: TruthRow) -> Tuple[Distribution, float]:
    """
    Semantic Bayesian inference.

    Args:
        prior: Source P(X)
        truth: Truth function T(theta_j|X)

    Returns:
        (likelihood P(X|theta_j), logical probability T(theta_j))

    Raises:
        EmptyFuzzySetError: If T(theta_j) = 0
    """
    logical = logical_probability(prior, truth)
    if logical < PROB_FLOOR:
        raise EmptyFuzzySetError("truth row has zero logical probability under the prior")
    weights = prior.mass * truth.values
    return Distribution(prior.support, weights / weights.sum()), logical


def transfer_likelihood(truth: TruthRow, new_prior: Distribution) -> Distribution:
    """Likelihood a learned truth row implies under a different source."""
    return semantic_bayes(new_prior, truth)[0]


def gaussian_truth_row(grid: Alphabet, center: float, width: float) -> TruthRow:
    """
    Unnormalized Gaussian truth function exp(-(x - c)^2 / (2 d^2)), peaking at 1.

    Args:
        grid: Numeric grid alphabet
        center: Center c of the hypothesis "X is about c"
        width: Width d (> 0)

    Returns:
        TruthRow over the grid
    """
    if not width > 0:
        raise InvalidParameterError(f"width must be positive, got {width}")
    z = grid.values
    return TruthRow(grid, np.exp(-((z - center) ** 2) / (2.0 * width**2)))


def optimize_truth_row_from_channel(channel_row: Sequence[float], support: Alphabet) -> TruthRow:
    """
    Match a truth row to a transition probability function by max-normalization.

    Args:
        channel_row: P(y_j|X) over the support
        support: Input alphabet X

    Returns:
        T*(theta_j|X) = P(y_j|X) / max P(y_j|X)

    Raises:
        EmptyHypothesisError: If the row is all zero
    """
    row = np.asarray(channel_row, dtype=float)
    peak = float(row.max()) if row.size else 0.0
    if peak <= 0.0:
        raise EmptyHypothesisError("transition probability function is zero everywhere")
    return TruthRow(support, row / peak)


def optimize_truth_row_from_sampling(sampling: Distribution, prior: Distribution) -> TruthRow:
    """
    Match a truth row to a sampling distribution P(X|y_j) under a prior.

    Args:
        sampling: Sampling distribution P(X|y_j)
        prior: Source P(X)

    Returns:
        T*(theta_j|X) proportional to P(X|y_j) / P(X), peaking at 1

    Raises:
        UndefinedRatioError: If the prior is zero where the sampling has mass
    """
    _check_support(sampling.support, prior.support)
    live = prior.mass > 0.0
    if np.any(~live & (sampling.mass > 0.0)):
        raise UndefinedRatioError("prior is zero where the sampling distribution has mass")
    ratio = np.zeros(len(prior))
    ratio[live] = sampling.mass[live] / prior.mass[live]
    return TruthRow(prior.support, ratio / ratio.max())


def matched_semantic_channel(channel: Channel) -> SemanticChannel:
    """Semantic channel whose every row is matched to the Shannon channel row."""
    return SemanticChannel(
        tuple(optimize_truth_row_from_channel(channel.row(j), channel.inputs) for j in range(len(channel.outputs)))
    )


def confidence_truth(base: TruthRow, b: float) -> TruthRow:
    """
    Truth row b' + b * base for a crisp base row and confidence level b.

    Args:
        base: Crisp truth row with values in {0, 1}
        b: Confidence level in [-1, 1]

    Returns:
        Fuzzy truth row whose counterexample truth value is b' = 1 - |b|
    """
    if abs(b) > 1.0:
        raise InvalidParameterError(f"confidence level must lie in [-1, 1], got {b}")
    if np.any((base.values != 0.0) & (base.values != 1.0)):
        raise InvalidParameterError("base truth row must be crisp (values in {0, 1})")
    return TruthRow(base.support, (1.0 - abs(b)) + b * base.values)


def no_confidence_from_channel(channel: Channel) -> NoConfidenceReport:
    """
    Optimized no-confidence levels of a 2x2 test channel.

    Inputs are ordered (x_0 uninfected, x_1 infected) and outputs (y_0 negative, y_1 positive).

    Args:
        channel: 2x2 Shannon channel

    Returns:
        NoConfidenceReport; infinite likelihood ratios saturate at SATURATED_BITS
    """
    if channel.matrix.shape != (2, 2):
        raise InvalidParameterError("no-confidence levels are defined for 2x2 test channels")
    (p_y0_x0, p_y0_x1), (p_y1_x0, p_y1_x1) = channel.matrix
    if p_y1_x1 <= 0.0 or p_y0_x0 <= 0.0:
        raise UndefinedConfidenceError("sensitivity and specificity must both be positive")

    b1 = float(p_y1_x0 / p_y1_x1)
    b0 = float(p_y0_x1 / p_y0_x0)
    return NoConfidenceReport(
        b1_prime=b1,
        b0_prime=b0,
        lr_plus=1.0 / b1 if b1 > 0.0 else SATURATED_BITS,
        lr_minus=1.0 / b0 if b0 > 0.0 else SATURATED_BITS,
    )


def crisp_row(support: Alphabet, true_labels: Optional[Iterable] = None, mask: Optional[Sequence[bool]] = None) -> TruthRow:
    """Crisp truth row from a set of labels or a boolean mask."""
    if mask is None:
        chosen = set(true_labels or ())
        mask = [label in chosen for label in support]
    return TruthRow(support, np.asarray(mask, dtype=float))
