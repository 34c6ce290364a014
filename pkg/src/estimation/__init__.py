"""CM algorithm for tests and estimations."""

from .classifier import CRISP, DecisionTable, fuzzy_classifier
from .matching import MatchedSemantics, left_step, minimum_error_partition, right_step
from .runner import TestStep, TestTrace, run_cm_test
from .scenario import NeutralMode, Partition, TestScenario

__all__ = [
    "CRISP",
    "DecisionTable",
    "MatchedSemantics",
    "NeutralMode",
    "Partition",
    "TestScenario",
    "TestStep",
    "TestTrace",
    "fuzzy_classifier",
    "left_step",
    "minimum_error_partition",
    "right_step",
    "run_cm_test",
]
