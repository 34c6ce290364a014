"""Test/estimation scenarios over a one-dimensional observation grid, and grid partitions."""

from dataclasses import dataclass
from enum import Enum
from typing import Hashable, List, Optional, Sequence, Tuple

import numpy as np

from ..core.errors import InvalidParameterError, SupportMismatchError
from ..core.probability import Alphabet, Channel, Distribution, discretized_gaussian

DEFAULT_GRID = (1, 100)


class NeutralMode(str, Enum):
    """How the 'tells nothing' hypothesis gets its truth row."""

    TAUTOLOGY = "tautology"  # T == 1, information curve == 0
    MATCHED = "matched"  # max-normalized own channel row, like every other label


@dataclass(frozen=True, eq=False)
class TestScenario:
    """
    Classes x_i with prior P(X) observed through P(Z|x_i) on a grid, labelled by n hypotheses.

    Attributes:
        grid: Observation alphabet Z
        classes: Class alphabet X
        prior: P(X)
        cond: P(Z|x_i) per class, in class order
        n_labels: Number of hypotheses y_j
        neutral_label: Index of the hypothesis that tells nothing, if any
        neutral_mode: Truth row of the neutral hypothesis
    """

    __test__ = False

    grid: Alphabet
    classes: Alphabet
    prior: Distribution
    cond: Tuple[Distribution, ...]
    n_labels: int
    neutral_label: Optional[int] = None
    neutral_mode: NeutralMode = NeutralMode.TAUTOLOGY

    def __post_init__(self) -> None:
        cond = tuple(self.cond)
        object.__setattr__(self, "cond", cond)
        object.__setattr__(self, "neutral_mode", NeutralMode(self.neutral_mode))
        if self.prior.support != self.classes:
            raise SupportMismatchError("prior is not defined over the class alphabet")
        if len(cond) != len(self.classes):
            raise InvalidParameterError(f"{len(cond)} conditional rows for {len(self.classes)} classes")
        if any(row.support != self.grid for row in cond):
            raise SupportMismatchError("every P(Z|x_i) must be defined over the grid")

        n_classes = len(self.classes)
        if self.neutral_label is None:
            if self.n_labels < n_classes:
                raise InvalidParameterError(f"need at least {n_classes} labels, got {self.n_labels}")
        else:
            if self.n_labels != n_classes + 1:
                raise InvalidParameterError("a neutral hypothesis needs exactly one label more than classes")
            if not 0 <= self.neutral_label < self.n_labels:
                raise InvalidParameterError(f"neutral label {self.neutral_label} out of range")

    @classmethod
    def from_gaussians(
        cls,
        priors: Sequence[float],
        centers: Sequence[float],
        stddevs: Sequence[float],
        grid: Optional[Alphabet] = None,
        n_labels: Optional[int] = None,
        neutral_label: Optional[int] = None,
        class_names: Optional[Sequence[Hashable]] = None,
        neutral_mode: NeutralMode = NeutralMode.TAUTOLOGY,
    ) -> "TestScenario":
        """
        Build a scenario whose class populations are discretized Gaussians.

        Args:
            priors: P(x_i) per class
            centers: Gaussian center c_i per class (grid units)
            stddevs: Gaussian stddev d_i per class (grid units)
            grid: Observation grid, integers 1..100 by default
            n_labels: Number of hypotheses (classes, plus one when neutral_label is set)
            neutral_label: Index of the neutral hypothesis
            class_names: Class labels (defaults to 0..n-1)
            neutral_mode: Truth row of the neutral hypothesis

        Returns:
            TestScenario
        """
        if not len(priors) == len(centers) == len(stddevs):
            raise InvalidParameterError("priors, centers and stddevs must have one entry per class")
        grid = grid or Alphabet.grid(*DEFAULT_GRID)
        classes = Alphabet.classes(class_names if class_names is not None else range(len(priors)))
        if n_labels is None:
            n_labels = len(priors) + (1 if neutral_label is not None else 0)
        return cls(
            grid=grid,
            classes=classes,
            prior=Distribution.from_weights(classes, priors),
            cond=tuple(discretized_gaussian(grid, c, d) for c, d in zip(centers, stddevs)),
            n_labels=n_labels,
            neutral_label=neutral_label,
            neutral_mode=neutral_mode,
        )

    @property
    def label_alphabet(self) -> Alphabet:
        return Alphabet(tuple(range(self.n_labels)))

    @property
    def cond_matrix(self) -> np.ndarray:
        """P(z|x_i), shape (classes, grid)."""
        return np.vstack([row.mass for row in self.cond])

    def observation_channel(self) -> Channel:
        """Full channel P(Z|X) before any partition."""
        return Channel(self.classes, self.grid, self.cond_matrix.T)

    def marginal_z(self) -> Distribution:
        """P(Z) = sum_i P(x_i) P(Z|x_i)."""
        return Distribution(self.grid, self.prior.mass @ self.cond_matrix)

    def posterior_matrix(self) -> np.ndarray:
        """
        Bayes posterior P(x_i|z), shape (classes, grid).

        Cells with P(z) = 0 carry the prior.
        """
        joint = self.prior.mass[:, None] * self.cond_matrix
        marginal = joint.sum(axis=0)
        posterior = np.tile(self.prior.mass[:, None], (1, len(self.grid)))
        live = marginal > 0.0
        posterior[:, live] = joint[:, live] / marginal[live]
        return posterior

    def non_neutral_labels(self) -> List[int]:
        return [j for j in range(self.n_labels) if j != self.neutral_label]


@dataclass(frozen=True)
class Partition:
    """Hypothesis label per grid cell."""

    labels: Tuple[int, ...]
    n_labels: int

    def __post_init__(self) -> None:
        labels = tuple(int(label) for label in self.labels)
        object.__setattr__(self, "labels", labels)
        if not labels:
            raise InvalidParameterError("partition must label at least one cell")
        if min(labels) < 0 or max(labels) >= self.n_labels:
            raise InvalidParameterError(f"labels must lie in 0..{self.n_labels - 1}")

    @classmethod
    def from_boundaries(cls, grid: Alphabet, boundaries: Sequence[float], n_labels: Optional[int] = None) -> "Partition":
        """
        Contiguous partition from boundary points.

        Each boundary is the last grid value of the lower label, so cells z <= b_1 get
        label 0, cells b_1 < z <= b_2 get label 1, and so on.
        """
        bounds = sorted(float(b) for b in boundaries)
        n_labels = n_labels if n_labels is not None else len(bounds) + 1
        if n_labels < len(bounds) + 1:
            raise InvalidParameterError(f"{len(bounds)} boundaries need at least {len(bounds) + 1} labels")
        z = grid.values
        labels = np.searchsorted(np.asarray(bounds), z, side="left")
        return cls(tuple(int(v) for v in labels), n_labels)

    @property
    def change_indices(self) -> List[int]:
        """Cell indices k where label k differs from label k + 1."""
        return [k for k in range(len(self.labels) - 1) if self.labels[k] != self.labels[k + 1]]

    def boundary_values(self, grid: Alphabet) -> List:
        """Last grid value before each label change."""
        if len(grid) != len(self.labels):
            raise SupportMismatchError("partition and grid differ in length")
        return [grid.labels[k] for k in self.change_indices]

    @property
    def is_contiguous(self) -> bool:
        """True when every label occupies a single run of cells."""
        seen = set()
        previous = None
        for label in self.labels:
            if label != previous:
                if label in seen:
                    return False
                seen.add(label)
                previous = label
        return True

    def indicator(self) -> np.ndarray:
        """Crisp membership table, shape (labels, cells)."""
        table = np.zeros((self.n_labels, len(self.labels)))
        table[list(self.labels), np.arange(len(self.labels))] = 1.0
        return table

    def unused_labels(self, neutral_label: Optional[int] = None) -> List[int]:
        """Non-neutral labels that no cell carries."""
        used = set(self.labels)
        return [j for j in range(self.n_labels) if j not in used and j != neutral_label]

    def is_degenerate(self, neutral_label: Optional[int] = None) -> bool:
        return bool(self.unused_labels(neutral_label))
