"""CM algorithm and EM baseline for Gaussian mixtures."""

from .cm import MixtureConfig, left_step_a, left_step_b, right_step, run_cm_mixture
from .decision import decision_rule
from .em import EMObjectives, em_objectives, em_step, run_em
from .model import GaussianComponent, MixtureModel
from .monitor import MixtureMonitor, monitor
from .trace import MixtureStep, MixtureTrace, StepKind

__all__ = [
    "EMObjectives",
    "GaussianComponent",
    "MixtureConfig",
    "MixtureModel",
    "MixtureMonitor",
    "MixtureStep",
    "MixtureTrace",
    "StepKind",
    "decision_rule",
    "em_objectives",
    "em_step",
    "left_step_a",
    "left_step_b",
    "monitor",
    "right_step",
    "run_cm_mixture",
    "run_em",
]
