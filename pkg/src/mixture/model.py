"""Gaussian mixture models on a discrete grid."""

from dataclasses import dataclass, replace
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.special import logsumexp

from ..core.errors import InvalidParameterError, SupportMismatchError, UndefinedResponsibilityError
from ..core.probability import Alphabet, Distribution, gaussian_log_mass
from ..utils.logging import get_logger

logger = get_logger(__name__)

DEFAULT_GRID = (1, 100)


@dataclass(frozen=True)
class GaussianComponent:
    """Likelihood P(X|theta_j) proportional to exp(-(x - c)^2 / (2 d^2)) on the grid."""

    center: float
    stddev: float

    def __post_init__(self) -> None:
        if not np.isfinite(self.center):
            raise InvalidParameterError(f"center must be finite, got {self.center}")
        if not self.stddev > 0:
            raise InvalidParameterError(f"stddev must be positive, got {self.stddev}")


@dataclass(frozen=True, eq=False)
class MixtureModel:
    """n Gaussian components on a grid with mixing weights P(Y)."""

    grid: Alphabet
    components: Tuple[GaussianComponent, ...]
    py: Distribution

    def __post_init__(self) -> None:
        components = tuple(self.components)
        object.__setattr__(self, "components", components)
        if not components:
            raise InvalidParameterError("mixture needs at least one component")
        if len(self.py) != len(components):
            raise SupportMismatchError(f"{len(self.py)} mixing weights for {len(components)} components")
        if not self.grid.is_grid:
            raise InvalidParameterError("mixture grid must be numeric")

    @classmethod
    def from_params(
        cls,
        centers: Sequence[float],
        stddevs: Sequence[float],
        weights: Optional[Sequence[float]] = None,
        grid: Optional[Alphabet] = None,
    ) -> "MixtureModel":
        """
        Build a mixture from parameter lists.

        Args:
            centers: c_j per component
            stddevs: d_j per component
            weights: P(y_j) per component (uniform when omitted)
            grid: Grid alphabet, integers 1..100 by default

        Returns:
            MixtureModel
        """
        if len(centers) != len(stddevs):
            raise InvalidParameterError("centers and stddevs must have the same length")
        labels = Alphabet(tuple(range(len(centers))))
        py = Distribution.uniform(labels) if weights is None else Distribution.from_weights(labels, weights)
        return cls(
            grid=grid or Alphabet.grid(*DEFAULT_GRID),
            components=tuple(GaussianComponent(float(c), float(d)) for c, d in zip(centers, stddevs)),
            py=py,
        )

    @property
    def n(self) -> int:
        return len(self.components)

    @property
    def centers(self) -> List[float]:
        return [c.center for c in self.components]

    @property
    def stddevs(self) -> List[float]:
        return [c.stddev for c in self.components]

    @property
    def weights(self) -> List[float]:
        return [float(w) for w in self.py.mass]

    def log_likelihoods(self) -> np.ndarray:
        """Natural-log P(x_i|theta_j), shape (components, grid)."""
        z = self.grid.values
        return np.vstack([gaussian_log_mass(z, c.center, c.stddev) for c in self.components])

    def likelihoods(self) -> np.ndarray:
        """P(x_i|theta_j), shape (components, grid)."""
        return np.exp(self.log_likelihoods())

    def component(self, j: int) -> Distribution:
        """Likelihood P(X|theta_j) as a distribution."""
        row = np.exp(self.log_likelihoods()[j])
        return Distribution(self.grid, row / row.sum())

    def mixture(self) -> Distribution:
        """Predicted distribution Q(X) = sum_j P(y_j) P(X|theta_j)."""
        with np.errstate(divide="ignore"):
            log_q = logsumexp(np.log(self.py.mass)[:, None] + self.log_likelihoods(), axis=0)
        q = np.exp(log_q)
        return Distribution(self.grid, q / q.sum())

    def with_components(self, components: Sequence[GaussianComponent]) -> "MixtureModel":
        return replace(self, components=tuple(components))

    def with_py(self, py: Distribution) -> "MixtureModel":
        return replace(self, py=py)

    def as_dict(self) -> dict:
        """Plain parameters for export."""
        return {"centers": self.centers, "stddevs": self.stddevs, "weights": self.weights}


def log_responsibilities(target: Distribution, model: MixtureModel) -> Tuple[np.ndarray, np.ndarray]:
    """
    Log-domain Shannon channel of a model.

    Args:
        target: Sampling distribution P(X)
        model: Mixture model

    Returns:
        (natural-log P(y_j|x_i) with shape (components, grid), natural-log Q(x_i))

    Raises:
        UndefinedResponsibilityError: If Q is zero where the target has mass
    """
    if target.support != model.grid:
        raise SupportMismatchError("target and model use different grids")
    with np.errstate(divide="ignore"):
        log_terms = np.log(model.py.mass)[:, None] + model.log_likelihoods()
    log_q = logsumexp(log_terms, axis=0)
    if np.any(~np.isfinite(log_q[target.mass > 0.0])):
        raise UndefinedResponsibilityError("predicted mixture is zero where the target has mass")
    with np.errstate(invalid="ignore"):
        log_channel = log_terms - log_q[None, :]
    log_channel[:, ~np.isfinite(log_q)] = -np.inf
    return log_channel, log_q


def check_initialization(target: Distribution, model: MixtureModel) -> bool:
    """
    Warn when every initial center sits on the same side of the target mean.

    Returns:
        True when the start is well spread
    """
    mean = target.mean()
    centers = np.asarray(model.centers)
    if model.n >= 2 and (np.all(centers > mean) or np.all(centers < mean)):
        logger.warning(
            "All initial centers lie on one side of the target mean; a weight may collapse to 0",
            mean=round(mean, 3),
            centers=model.centers,
        )
        return False
    return True
