"""Experiment presets, random trials and trace export."""

from .export import (
    export_records,
    export_trace,
    information_curves,
    iteration_series,
    to_plain,
    trace_records,
    write_summary,
)
from .metrics import iteration_statistics
from .presets import (
    CheckOutcome,
    ExperimentResult,
    apply_overrides,
    evaluate_checks,
    list_presets,
    load_preset,
    run_experiment,
    run_preset,
    write_outputs,
)
from .trials import TrialResult, TrialsReport, generate_trial, run_trial, run_trials

__all__ = [
    "CheckOutcome",
    "ExperimentResult",
    "TrialResult",
    "TrialsReport",
    "apply_overrides",
    "evaluate_checks",
    "export_records",
    "export_trace",
    "generate_trial",
    "information_curves",
    "iteration_series",
    "iteration_statistics",
    "list_presets",
    "load_preset",
    "run_experiment",
    "run_preset",
    "run_trial",
    "run_trials",
    "to_plain",
    "trace_records",
    "write_outputs",
    "write_summary",
]
