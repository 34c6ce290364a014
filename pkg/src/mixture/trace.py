"""Per-step records of mixture fitting runs."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional

from ..core.information import kl_divergence
from ..core.probability import Distribution
from .model import MixtureModel
from .monitor import MixtureMonitor

# Allowed increase of H(Q||P) between consecutive records
MONOTONE_SLACK = 1e-9


class StepKind(str, Enum):
    """Kind of step that produced a record."""

    LEFT_A = "left_a"
    LEFT_B = "left_b"
    RIGHT = "right"
    E_STEP = "e_step"
    M_STEP = "m_step"


@dataclass
class MixtureStep:
    """Monitor snapshot after one step."""

    index: int
    kind: StepKind
    monitor: MixtureMonitor
    model: MixtureModel
    guard_tripped: bool = False
    inner_iterations: int = 0
    g_held: Optional[float] = None  # G with the channel of the previous Left-step
    h_qp_held: Optional[float] = None  # R_Q of that channel minus g_held

    def as_record(self) -> Dict[str, object]:
        """Flat row for tabular export."""
        record: Dict[str, object] = {
            "step_index": self.index,
            "step_kind": self.kind.value,
            "G": self.monitor.g,
            "R": self.monitor.r,
            "R_Q": self.monitor.r_q,
            "H_QP": self.monitor.h_qp,
            "H_Y_Yplus": self.monitor.h_y_yplus,
        }
        for j, (c, d, w) in enumerate(
            zip(self.model.centers, self.model.stddevs, self.model.weights), start=1
        ):
            record[f"c_{j}"] = c
            record[f"d_{j}"] = d
            record[f"py_{j}"] = w
        return record


@dataclass
class MixtureTrace:
    """Ordered step records of one fitting run."""

    target: Distribution
    steps: List[MixtureStep] = field(default_factory=list)
    converged: bool = False
    right_steps: int = 0
    algorithm: str = "cm"
    objectives: List = field(default_factory=list)  # EM runs: objectives per M-step record

    def record(
        self,
        kind: StepKind,
        monitor: MixtureMonitor,
        model: MixtureModel,
        **extra,
    ) -> MixtureStep:
        """Append a snapshot and return it."""
        step = MixtureStep(index=len(self.steps), kind=kind, monitor=monitor, model=model, **extra)
        self.steps.append(step)
        return step

    @property
    def final_model(self) -> Optional[MixtureModel]:
        return self.steps[-1].model if self.steps else None

    @property
    def final_monitor(self) -> Optional[MixtureMonitor]:
        return self.steps[-1].monitor if self.steps else None

    def h_qp_series(self) -> List[float]:
        return [step.monitor.h_qp for step in self.steps]

    def monotonicity_violations(self, slack: float = MONOTONE_SLACK) -> List[int]:
        """Indices of records whose H(Q||P) exceeds the previous record's by more than slack."""
        series = self.h_qp_series()
        return [k for k in range(1, len(series)) if series[k] > series[k - 1] + slack]

    def max_identity_error(self) -> float:
        """Largest |H_QP - KL(P||Q)| over all records."""
        if not self.steps:
            return 0.0
        return max(abs(step.monitor.h_qp - kl_divergence(self.target, step.monitor.q_x)) for step in self.steps)

    def steps_of(self, kind: StepKind) -> List[MixtureStep]:
        return [step for step in self.steps if step.kind is kind]

    def to_records(self) -> List[Dict[str, object]]:
        return [step.as_record() for step in self.steps]
