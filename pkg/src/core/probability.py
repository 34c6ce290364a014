"""Finite discrete probability primitives: alphabets, distributions, channels."""

from dataclasses import dataclass, field
from numbers import Real
from typing import Hashable, Iterable, Optional, Sequence, Tuple

import numpy as np
from scipy.special import logsumexp

from .errors import (
    DegenerateDistributionError,
    InvalidParameterError,
    SupportMismatchError,
)

# Normalization tolerance shared by every probability table
PROB_TOL = 1e-9


def _is_number(label: object) -> bool:
    return isinstance(label, Real) and not isinstance(label, bool)


def _frozen(values: Iterable[float], ndim: int) -> np.ndarray:
    array = np.array(values, dtype=float, copy=True)
    if array.ndim != ndim:
        raise InvalidParameterError(f"expected a {ndim}-d table, got shape {array.shape}")
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class Alphabet:
    """Ordered set of symbols: class labels or real grid values."""

    labels: Tuple[Hashable, ...]

    def __post_init__(self) -> None:
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if not labels:
            raise InvalidParameterError("alphabet must not be empty")
        if len(set(labels)) != len(labels):
            raise InvalidParameterError("alphabet labels must be distinct")
        if self.is_grid and any(b <= a for a, b in zip(labels, labels[1:])):
            raise InvalidParameterError("grid alphabet must be strictly increasing")

    @classmethod
    def grid(cls, start: float, stop: float, step: float = 1) -> "Alphabet":
        """
        Build a uniform grid alphabet from start to stop inclusive.

        Args:
            start: First grid value
            stop: Last grid value
            step: Grid spacing (> 0)

        Returns:
            Grid alphabet
        """
        if step <= 0:
            raise InvalidParameterError(f"grid step must be positive, got {step}")
        count = int(round((stop - start) / step)) + 1
        if count < 1:
            raise InvalidParameterError(f"empty grid from {start} to {stop}")
        if all(float(v).is_integer() for v in (start, step)):
            return cls(tuple(int(start) + k * int(step) for k in range(count)))
        return cls(tuple(float(start) + k * float(step) for k in range(count)))

    @classmethod
    def classes(cls, names: Sequence[Hashable]) -> "Alphabet":
        """Build a categorical alphabet from label names."""
        return cls(tuple(names))

    @property
    def is_grid(self) -> bool:
        """True when every label is a real number."""
        return all(_is_number(label) for label in self.labels)

    @property
    def values(self) -> np.ndarray:
        """Grid values as a float array."""
        if not self.is_grid:
            raise InvalidParameterError("alphabet is not a numeric grid")
        return np.asarray(self.labels, dtype=float)

    def index(self, label: Hashable) -> int:
        """Position of a label."""
        try:
            return self.labels.index(label)
        except ValueError as e:
            raise SupportMismatchError(f"label {label!r} not in alphabet") from e

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)


@dataclass(frozen=True, eq=False)
class Distribution:
    """Probability vector over an alphabet."""

    support: Alphabet
    mass: np.ndarray

    def __post_init__(self) -> None:
        mass = _frozen(self.mass, 1)
        if mass.shape[0] != len(self.support):
            raise SupportMismatchError(
                f"mass has {mass.shape[0]} entries for an alphabet of {len(self.support)}"
            )
        if np.any(~np.isfinite(mass)) or np.any(mass < 0):
            raise InvalidParameterError("probability masses must be finite and non-negative")
        total = float(mass.sum())
        if abs(total - 1.0) > PROB_TOL:
            raise InvalidParameterError(f"masses sum to {total!r}, expected 1")
        object.__setattr__(self, "mass", mass)

    @classmethod
    def from_weights(cls, support: Alphabet, weights: Iterable[float]) -> "Distribution":
        """
        Normalize non-negative weights into a distribution.

        Args:
            support: Alphabet the weights are defined over
            weights: Non-negative weights, one per symbol

        Returns:
            Normalized distribution

        Raises:
            DegenerateDistributionError: If all weights are zero
        """
        w = np.asarray(list(weights) if not isinstance(weights, np.ndarray) else weights, dtype=float)
        if np.any(w < 0):
            raise InvalidParameterError("weights must be non-negative")
        total = float(w.sum())
        if not np.isfinite(total) or total <= 0.0:
            raise DegenerateDistributionError("weights have no positive mass")
        return cls(support, w / total)

    @classmethod
    def uniform(cls, support: Alphabet) -> "Distribution":
        """Uniform distribution over the alphabet."""
        return cls(support, np.full(len(support), 1.0 / len(support)))

    @classmethod
    def point(cls, support: Alphabet, label: Hashable) -> "Distribution":
        """Point mass at one symbol."""
        mass = np.zeros(len(support))
        mass[support.index(label)] = 1.0
        return cls(support, mass)

    def __getitem__(self, label: Hashable) -> float:
        return float(self.mass[self.support.index(label)])

    def __len__(self) -> int:
        return len(self.support)

    def allclose(self, other: "Distribution", atol: float = PROB_TOL) -> bool:
        """Same support and masses equal within atol."""
        return self.support == other.support and bool(np.allclose(self.mass, other.mass, rtol=0.0, atol=atol))

    def mean(self) -> float:
        """Expectation of the grid values."""
        return float(self.mass @ self.support.values)


@dataclass(frozen=True, eq=False)
class Channel:
    """Shannon channel: row j is the transition probability function P(y_j|X)."""

    inputs: Alphabet
    outputs: Alphabet
    matrix: np.ndarray  # shape (len(outputs), len(inputs)), matrix[j, i] = P(y_j|x_i)

    def __post_init__(self) -> None:
        matrix = _frozen(self.matrix, 2)
        if matrix.shape != (len(self.outputs), len(self.inputs)):
            raise SupportMismatchError(
                f"channel table shape {matrix.shape} does not match "
                f"({len(self.outputs)}, {len(self.inputs)})"
            )
        if np.any(matrix < -PROB_TOL) or np.any(matrix > 1.0 + PROB_TOL):
            raise InvalidParameterError("transition probabilities must lie in [0, 1]")
        column_sums = matrix.sum(axis=0)
        if np.any(np.abs(column_sums - 1.0) > PROB_TOL):
            raise InvalidParameterError("each input symbol's transition probabilities must sum to 1")
        object.__setattr__(self, "matrix", matrix)

    @classmethod
    def identity(cls, alphabet: Alphabet) -> "Channel":
        """Noiseless channel with outputs equal to inputs."""
        return cls(alphabet, alphabet, np.eye(len(alphabet)))

    @classmethod
    def from_conditionals(cls, outputs: Alphabet, conditionals: Sequence[Distribution]) -> "Channel":
        """
        Build a channel from one output distribution P(Y|x_i) per input symbol.

        Args:
            outputs: Output alphabet shared by every conditional
            conditionals: P(Y|x_i) for each input x_i, in input order

        Returns:
            Channel whose column i is conditionals[i]
        """
        for cond in conditionals:
            if cond.support != outputs:
                raise SupportMismatchError("conditional distributions must share the output alphabet")
        inputs = Alphabet(tuple(range(len(conditionals))))
        return cls(inputs, outputs, np.column_stack([c.mass for c in conditionals]))

    def with_inputs(self, inputs: Alphabet) -> "Channel":
        """Relabel the input alphabet."""
        return Channel(inputs, self.outputs, self.matrix)

    def row(self, j: int) -> np.ndarray:
        """Transition probability function P(y_j|X)."""
        return self.matrix[j]


@dataclass(frozen=True, eq=False)
class JointStats:
    """Joint, marginal and posterior tables derived from a prior and a channel."""

    marginal_y: Distribution
    joint: np.ndarray  # shape (len(X), len(Y)), joint[i, j] = P(x_i, y_j)
    posteriors: Tuple[Optional[Distribution], ...] = field(default_factory=tuple)

    @property
    def undefined_rows(self) -> Tuple[int, ...]:
        """Indices j whose posterior P(X|y_j) is undefined because P(y_j) = 0."""
        return tuple(j for j, post in enumerate(self.posteriors) if post is None)


def discretized_gaussian(grid: Alphabet, center: float, stddev: float) -> Distribution:
    """
    Gaussian shape evaluated on a grid and renormalized over the grid.

    Args:
        grid: Numeric grid alphabet
        center: Gaussian center (grid units)
        stddev: Gaussian standard deviation (grid units, > 0)

    Returns:
        Distribution with mass(z) proportional to exp(-(z - center)^2 / (2 stddev^2))

    Raises:
        InvalidParameterError: If stddev <= 0
        DegenerateDistributionError: If every density underflows to 0
    """
    if not stddev > 0:
        raise InvalidParameterError(f"stddev must be positive, got {stddev}")
    z = grid.values
    density = np.exp(-((z - center) ** 2) / (2.0 * stddev**2))
    total = float(density.sum())
    if total <= 0.0:
        raise DegenerateDistributionError(
            f"Gaussian(center={center}, stddev={stddev}) underflows on the whole grid"
        )
    return Distribution(grid, density / total)


def gaussian_log_mass(values: np.ndarray, center: float, stddev: float) -> np.ndarray:
    """Natural log of the discretized Gaussian masses, computed in the log domain."""
    exponent = -((values - center) ** 2) / (2.0 * stddev**2)
    return exponent - logsumexp(exponent)


def channel_stats(prior: Distribution, channel: Channel) -> JointStats:
    """
    Bayes inversion of a channel under a prior.

    Args:
        prior: Source distribution P(X)
        channel: Channel P(Y|X) over the prior's support

    Returns:
        JointStats with joint P(x, y), marginal P(Y) and posteriors P(X|y_j);
        posteriors of zero-probability outputs are None
    """
    if channel.inputs != prior.support:
        raise SupportMismatchError("channel input alphabet differs from the prior support")

    joint = prior.mass[:, None] * channel.matrix.T
    marginal = joint.sum(axis=0)
    posteriors = []
    for j, p_y in enumerate(marginal):
        if p_y > 0.0:
            posteriors.append(Distribution(prior.support, joint[:, j] / p_y))
        else:
            posteriors.append(None)

    joint = _frozen(joint, 2)
    return JointStats(
        marginal_y=Distribution(channel.outputs, marginal / marginal.sum()),
        joint=joint,
        posteriors=tuple(posteriors),
    )
