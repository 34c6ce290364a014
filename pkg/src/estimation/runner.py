"""Iterate Right-steps and Left-steps of a test to a fixed partition."""

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from ..core.probability import Alphabet
from ..utils.logging import get_logger
from .matching import MatchedSemantics, left_step, right_step
from .scenario import NeutralMode, Partition, TestScenario

logger = get_logger(__name__)

MAX_TEST_ITERATIONS = 100


@dataclass
class TestStep:
    """One iteration: the Right-step at the incoming partition and the Left-step result."""

    __test__ = False

    iteration: int
    incoming: Partition
    partition: Partition
    boundaries: List
    i_x_theta: float
    shannon_mi: float


@dataclass
class TestTrace:
    """Record of a CM test run."""

    __test__ = False

    grid: Alphabet
    initial: Partition
    steps: List[TestStep] = field(default_factory=list)
    converged: bool = False
    oscillation: Optional[Tuple[Partition, ...]] = None
    degenerate: bool = False
    first: Optional[MatchedSemantics] = None
    final: Optional[MatchedSemantics] = None

    @property
    def iterations(self) -> int:
        return len(self.steps)

    @property
    def final_partition(self) -> Partition:
        return self.steps[-1].partition if self.steps else self.initial

    @property
    def final_boundaries(self) -> List:
        return self.final_partition.boundary_values(self.grid)

    def boundary_sequence(self) -> List[List]:
        """Boundaries of the initial partition followed by every Left-step result."""
        return [self.initial.boundary_values(self.grid)] + [step.boundaries for step in self.steps]

    def information_sequence(self) -> List[float]:
        """I(X;Theta) after each Right-step."""
        return [step.i_x_theta for step in self.steps]


def run_cm_test(
    scenario: TestScenario,
    init: Partition,
    max_iterations: int = MAX_TEST_ITERATIONS,
) -> TestTrace:
    """
    Alternate Right-steps and Left-steps until the partition repeats.

    Args:
        scenario: Test scenario
        init: Starting partition
        max_iterations: Iteration cap (one iteration = one Right-step + one Left-step)

    Returns:
        TestTrace; oscillation and degenerate partitions end the run without convergence
    """
    trace = TestTrace(grid=scenario.grid, initial=init)
    pinned = scenario.neutral_label if scenario.neutral_mode is NeutralMode.TAUTOLOGY else None
    history = [init]
    current = init

    logger.info(
        "Starting CM test",
        classes=len(scenario.classes),
        labels=scenario.n_labels,
        start=init.boundary_values(scenario.grid),
    )

    for iteration in range(1, max_iterations + 1):
        matched = right_step(scenario, current)
        proposed = left_step(matched.curves, neutral_label=pinned)
        if trace.first is None:
            trace.first = matched
        trace.final = matched
        trace.steps.append(
            TestStep(
                iteration=iteration,
                incoming=current,
                partition=proposed,
                boundaries=proposed.boundary_values(scenario.grid),
                i_x_theta=matched.i_x_theta,
                shannon_mi=matched.shannon_mi,
            )
        )
        logger.debug(
            "CM test iteration",
            iteration=iteration,
            boundaries=trace.steps[-1].boundaries,
            i_x_theta=matched.i_x_theta,
        )

        if proposed == current:
            trace.converged = True
            break
        if proposed.is_degenerate(scenario.neutral_label):
            trace.degenerate = True
            logger.warning("Left-step produced a degenerate partition", iteration=iteration)
            break
        if proposed in history:
            cycle_start = history.index(proposed)
            trace.oscillation = tuple(history[cycle_start:])
            logger.warning("CM test oscillates", iteration=iteration, period=len(trace.oscillation))
            break

        history.append(proposed)
        current = proposed
    else:
        logger.warning("CM test hit the iteration cap", iterations=max_iterations)

    logger.info(
        "CM test finished",
        converged=trace.converged,
        iterations=trace.iterations,
        boundaries=trace.final_boundaries,
    )
    return trace
