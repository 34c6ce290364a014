"""Experiment configuration loaded from YAML."""

from enum import Enum
from pathlib import Path
from typing import Any, List, Optional, Union

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from ..core.errors import ConfigError


class ExperimentKind(str, Enum):
    """What an experiment runs."""

    TEST = "test"
    ESTIMATION = "estimation"
    MIXTURE = "mixture"
    EM = "em"
    RG_CURVE = "rg_curve"
    TRIALS = "trials"


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class GridConfig(_Section):
    """Uniform grid from start to stop inclusive."""

    start: float = 1
    stop: float = 100
    step: float = 1

    @model_validator(mode="after")
    def ordered(self) -> "GridConfig":
        if self.step <= 0 or self.stop < self.start:
            raise ValueError("grid needs step > 0 and stop >= start")
        return self


class ScenarioConfig(_Section):
    """Test/estimation scenario."""

    priors: List[float]
    centers: List[float]
    stddevs: List[float]
    init_boundaries: List[float]
    class_names: Optional[List[str]] = None
    n_labels: Optional[int] = None
    neutral_label: Optional[int] = None
    neutral_mode: str = "tautology"
    max_iterations: int = 100

    @field_validator("neutral_mode")
    @classmethod
    def known_mode(cls, v: str) -> str:
        if v not in ("tautology", "matched"):
            raise ValueError(f"unknown neutral mode {v!r}")
        return v

    @model_validator(mode="after")
    def same_lengths(self) -> "ScenarioConfig":
        if not len(self.priors) == len(self.centers) == len(self.stddevs):
            raise ValueError("priors, centers and stddevs need one entry per class")
        return self


class ComponentsConfig(_Section):
    """Mixture parameters."""

    centers: List[float]
    stddevs: List[float]
    weights: Optional[List[float]] = None

    @model_validator(mode="after")
    def same_lengths(self) -> "ComponentsConfig":
        if len(self.centers) != len(self.stddevs):
            raise ValueError("centers and stddevs need one entry per component")
        if self.weights is not None and len(self.weights) != len(self.centers):
            raise ValueError("weights need one entry per component")
        return self


class MixtureSection(_Section):
    """Mixture fit: true model (or target) and start model."""

    true_model: ComponentsConfig
    init: ComponentsConfig
    max_right_steps: int = 200
    d_min: float = 0.5
    guard_ratio: float = 0.1
    polish: bool = True
    compare_em: bool = False


class SRange(_Section):
    """Evenly spaced values of s."""

    start: float
    stop: float
    num: int = Field(default=50, ge=2)


class RGConfig(_Section):
    """R(G) sweep over a source and a payoff."""

    prior: List[float]
    truth: Optional[List[List[float]]] = None  # hypotheses x symbols
    counter_truth: Optional[float] = None  # symmetric binary payoff
    distortion: Optional[List[List[float]]] = None  # classical R(D) instead of R(G)
    s_values: Optional[List[float]] = None
    s_range: Optional[SRange] = None
    r_target: Optional[float] = None

    @model_validator(mode="after")
    def one_payoff(self) -> "RGConfig":
        given = [v is not None for v in (self.truth, self.counter_truth, self.distortion)]
        if sum(given) != 1:
            raise ValueError("give exactly one of truth, counter_truth or distortion")
        if (self.s_values is None) == (self.s_range is None):
            raise ValueError("give exactly one of s_values or s_range")
        return self


class TrialsConfig(_Section):
    """Seeded random two-component mixture trials."""

    count: int = Field(default=1000, ge=1)
    base_seed: Optional[int] = None
    center_low: float = 20
    center_high: float = 80
    min_separation: float = 25
    stddev_low: float = 5
    stddev_high: float = 15
    weight_low: float = 0.1
    weight_high: float = 0.9
    start_centers: List[float] = Field(default_factory=lambda: [37.5, 62.5])
    start_stddevs: List[float] = Field(default_factory=lambda: [15.0, 15.0])
    max_right_steps: int = 200
    compare_em: bool = False
    workers: Optional[int] = None

    @model_validator(mode="after")
    def two_component_start(self) -> "TrialsConfig":
        if len(self.start_centers) != 2 or len(self.start_stddevs) != 2:
            raise ValueError("start_centers and start_stddevs need two entries")
        if min(self.start_stddevs) <= 0:
            raise ValueError("start_stddevs must be positive")
        return self


class CheckConfig(_Section):
    """Acceptance check on one summary metric."""

    metric: str
    expected: Optional[Any] = None
    tol: float = 0.0
    min: Optional[float] = None
    max: Optional[float] = None

    @model_validator(mode="after")
    def has_condition(self) -> "CheckConfig":
        if self.expected is None and self.min is None and self.max is None:
            raise ValueError(f"check on {self.metric!r} needs expected, min or max")
        return self


class OutputConfig(_Section):
    """Where and how results are written."""

    format: str = "csv"
    directory: Optional[str] = None

    @field_validator("format")
    @classmethod
    def known_format(cls, v: str) -> str:
        if v not in ("csv", "json"):
            raise ValueError(f"unknown output format {v!r}")
        return v


class ExperimentConfig(_Section):
    """Complete experiment description."""

    name: str
    kind: ExperimentKind
    grid: GridConfig = Field(default_factory=GridConfig)
    tol: float = Field(default=0.001, gt=0)
    seed: Optional[int] = None
    test: Optional[ScenarioConfig] = None
    mixture: Optional[MixtureSection] = None
    rg: Optional[RGConfig] = None
    trials: Optional[TrialsConfig] = None
    checks: List[CheckConfig] = Field(default_factory=list)
    output: OutputConfig = Field(default_factory=OutputConfig)

    @model_validator(mode="after")
    def section_for_kind(self) -> "ExperimentConfig":
        needed = {
            ExperimentKind.TEST: "test",
            ExperimentKind.ESTIMATION: "test",
            ExperimentKind.MIXTURE: "mixture",
            ExperimentKind.EM: "mixture",
            ExperimentKind.RG_CURVE: "rg",
            ExperimentKind.TRIALS: "trials",
        }[self.kind]
        if getattr(self, needed) is None:
            raise ValueError(f"kind {self.kind.value!r} needs a {needed!r} section")
        return self

    @classmethod
    def from_yaml(cls, text: str) -> "ExperimentConfig":
        """
        Parse a YAML document.

        Raises:
            ConfigError: If the document is not valid YAML or not a valid experiment
        """
        try:
            data = yaml.safe_load(text)
        except yaml.YAMLError as e:
            raise ConfigError(f"invalid YAML: {e}") from e
        if not isinstance(data, dict):
            raise ConfigError("experiment file must be a mapping")
        try:
            return cls.model_validate(data)
        except ValidationError as e:
            raise ConfigError(str(e)) from e

    @classmethod
    def from_file(cls, config_path: Union[str, Path]) -> "ExperimentConfig":
        """Load configuration from a YAML file."""
        path = Path(config_path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            raise ConfigError(f"cannot read {path}: {e}") from e
        return cls.from_yaml(text)

    def to_yaml(self) -> str:
        """Serialize back to YAML."""
        return yaml.safe_dump(self.model_dump(mode="json", exclude_none=True), sort_keys=False)
