"""Domain errors."""

from typing import Optional


class CMError(ValueError):
    """Base class for all library errors."""


class InvalidParameterError(CMError):
    """Raised when a numeric parameter is outside its allowed range."""


class DegenerateDistributionError(CMError):
    """Raised when a distribution has no mass left to normalize."""


class SupportMismatchError(CMError):
    """Raised when two objects are defined over different alphabets."""


class DivergenceUndefinedError(CMError):
    """Raised when a log ratio has a zero denominator under positive weight."""


class EmptyFuzzySetError(CMError):
    """Raised when a truth row has zero logical probability."""


class EmptyHypothesisError(CMError):
    """Raised when a channel row carries no probability at all."""


class UndefinedRatioError(CMError):
    """Raised when a sampling/prior ratio has a zero prior under positive sampling."""


class UndefinedConfidenceError(CMError):
    """Raised when a test has zero sensitivity or zero specificity."""


class DomainError(CMError):
    """Raised when an argument is outside the domain of a closed form."""


class UndefinedEfficiencyError(CMError):
    """Raised when information efficiency is requested at R = 0."""


class DegeneratePartitionError(CMError):
    """Raised when a non-neutral hypothesis labels no grid cell."""


class UndefinedResponsibilityError(CMError):
    """Raised when the predicted mixture is zero where the target has mass."""


class ComponentStarvedError(CMError):
    """Raised when a mixture component receives zero total weight."""


class ConfigError(CMError):
    """Raised when an experiment configuration cannot be used."""


class UnknownPresetError(ConfigError):
    """Raised when a preset name is not known."""


class ConvergenceError(CMError):
    """Raised when a fixed-point iteration exhausts its iteration budget."""

    def __init__(self, message: str, residual: float, iterations: int, detail: Optional[str] = None):
        super().__init__(message if detail is None else f"{message}: {detail}")
        self.residual = residual
        self.iterations = iterations
