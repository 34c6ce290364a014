"""Named presets and config-driven experiment runs with embedded acceptance checks."""

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from ..config.experiment_config import (
    CheckConfig,
    ComponentsConfig,
    ExperimentConfig,
    ExperimentKind,
    RGConfig,
)
from ..config.settings import get_settings
from ..core.errors import UnknownPresetError
from ..core.information import entropy, mutual_information
from ..core.probability import Alphabet, Distribution
from ..estimation import NeutralMode, Partition, TestScenario, TestTrace, minimum_error_partition, run_cm_test
from ..mixture import MixtureConfig, MixtureModel, MixtureTrace, run_cm_mixture, run_em
from ..rg import (
    PayoffMatrix,
    RGCurve,
    payoff_from_semantic_channel,
    rd_point,
    rg_binary_closed_form,
    rg_curve,
    rg_point,
    symmetric_binary_payoff,
)
from ..semantic import SemanticChannel
from ..utils.logging import experiment_context, get_logger
from .export import (
    MIXTURE_COLUMNS,
    SERIES_COLUMNS,
    export_records,
    export_trace,
    information_curves,
    iteration_series,
    write_summary,
)
from .trials import run_trials

logger = get_logger(__name__)


@dataclass
class CheckOutcome:
    """Result of one acceptance check."""

    metric: str
    passed: bool
    actual: Any = None
    detail: str = ""


@dataclass
class ExperimentResult:
    """Summary, exportable trace and check outcomes of one experiment."""

    name: str
    kind: ExperimentKind
    summary: Dict[str, Any]
    trace: Any = None
    records: Optional[List[Dict[str, Any]]] = None
    checks: List[CheckOutcome] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)


def list_presets() -> List[str]:
    """Names of the preset experiments shipped in config/presets."""
    return sorted(path.stem for path in get_settings().presets_dir.glob("*.yaml"))


def load_preset(name: str) -> ExperimentConfig:
    """
    Load a preset experiment by name.

    Raises:
        UnknownPresetError: If no preset has that name
    """
    path = get_settings().presets_dir / f"{name}.yaml"
    if not path.is_file():
        raise UnknownPresetError(f"unknown preset {name!r}; known presets: {', '.join(list_presets())}")
    return ExperimentConfig.from_file(path)


def apply_overrides(
    config: ExperimentConfig, tol: Optional[float] = None, seed: Optional[int] = None
) -> ExperimentConfig:
    """Copy of config with command-line overrides applied."""
    update: Dict[str, Any] = {}
    if tol is not None:
        update["tol"] = tol
    if seed is not None:
        update["seed"] = seed
    return config.model_copy(update=update) if update else config


def _grid(config: ExperimentConfig) -> Alphabet:
    return Alphabet.grid(config.grid.start, config.grid.stop, config.grid.step)


def _model(section: ComponentsConfig, grid: Alphabet) -> MixtureModel:
    return MixtureModel.from_params(section.centers, section.stddevs, section.weights, grid=grid)


# Test and estimation


def _run_test(config: ExperimentConfig) -> ExperimentResult:
    section = config.test
    grid = _grid(config)
    scenario = TestScenario.from_gaussians(
        section.priors,
        section.centers,
        section.stddevs,
        grid=grid,
        n_labels=section.n_labels,
        neutral_label=section.neutral_label,
        class_names=section.class_names,
        neutral_mode=NeutralMode(section.neutral_mode),
    )
    init = Partition.from_boundaries(grid, section.init_boundaries, n_labels=scenario.n_labels)
    trace = run_cm_test(scenario, init, max_iterations=section.max_iterations)

    summary: Dict[str, Any] = {
        "boundaries": trace.final_boundaries,
        "boundary_sequence": trace.boundary_sequence(),
        "iterations": trace.iterations,
        "converged": trace.converged,
        "oscillation": trace.oscillation is not None,
        "degenerate": trace.degenerate,
        "i_x_theta": trace.final.i_x_theta if trace.final else None,
        "shannon_mi": trace.final.shannon_mi if trace.final else None,
        "information_sequence": trace.information_sequence(),
        "h_x": entropy(scenario.prior),
        "i_x_z": mutual_information(scenario.prior, scenario.observation_channel()),
        "minimum_error_boundaries": minimum_error_partition(scenario).boundary_values(grid),
    }
    return ExperimentResult(config.name, config.kind, summary, trace=trace)


# Mixtures


def _mixture_summary(trace: MixtureTrace, prefix: str = "") -> Dict[str, Any]:
    model = trace.final_model
    return {
        f"{prefix}converged": trace.converged,
        f"{prefix}right_steps": trace.right_steps,
        f"{prefix}initial_h_qp": trace.steps[0].monitor.h_qp,
        f"{prefix}final_h_qp": trace.final_monitor.h_qp,
        f"{prefix}final_g": trace.final_monitor.g,
        f"{prefix}final_r": trace.final_monitor.r,
        f"{prefix}centers": model.centers,
        f"{prefix}stddevs": model.stddevs,
        f"{prefix}weights": model.weights,
        f"{prefix}monotonicity_violations": len(trace.monotonicity_violations()),
        f"{prefix}max_identity_error": trace.max_identity_error(),
    }


def _em_summary(trace: MixtureTrace) -> Dict[str, Any]:
    summary = _mixture_summary(trace, prefix="em_")
    objectives = trace.objectives
    summary["em_objective_identity_error"] = max(abs(o.q_fun - (o.g - o.h_x - o.h_y_gen)) for o in objectives)
    summary["em_min_bound_gap"] = min(o.log_l - o.l_fun for o in objectives)
    return summary


def _run_mixture(config: ExperimentConfig) -> ExperimentResult:
    section = config.mixture
    grid = _grid(config)
    true = _model(section.true_model, grid)
    init = _model(section.init, grid)
    mixture_config = MixtureConfig(
        tol=config.tol,
        max_right_steps=section.max_right_steps,
        d_min=section.d_min,
        guard_ratio=section.guard_ratio,
        polish=section.polish,
    )

    if config.kind is ExperimentKind.EM:
        trace = run_em(true, init, mixture_config)
        summary = _em_summary(trace)
    else:
        trace = run_cm_mixture(true, init, mixture_config)
        summary = _mixture_summary(trace)
        if section.compare_em:
            summary.update(_em_summary(run_em(true, init, mixture_config)))
    return ExperimentResult(config.name, config.kind, summary, trace=trace)


# R(G)


def _s_values(section: RGConfig) -> List[float]:
    if section.s_values is not None:
        return [float(s) for s in section.s_values]
    return [float(s) for s in np.linspace(section.s_range.start, section.s_range.stop, section.s_range.num)]


def _payoff(section: RGConfig, prior: Distribution) -> PayoffMatrix:
    if section.counter_truth is not None:
        return symmetric_binary_payoff(section.counter_truth, prior)
    sem = SemanticChannel.from_matrix(prior.support, section.truth)
    return payoff_from_semantic_channel(prior, sem)


def _slope_error(curve: RGCurve) -> Optional[float]:
    errors = [abs(slope - s) / abs(s) for s, slope in curve.slopes() if abs(s) > 1e-6]
    return max(errors) if errors else None


def _run_rg(config: ExperimentConfig) -> ExperimentResult:
    section = config.rg
    prior = Distribution.from_weights(Alphabet(tuple(range(len(section.prior)))), section.prior)
    s_values = _s_values(section)

    if section.distortion is not None:
        points = [rd_point(prior, np.asarray(section.distortion), s) for s in sorted(s_values)]
        records = [{"s": s, "D": p.d, "R": p.r} for s, p in zip(sorted(s_values), points)]
        summary: Dict[str, Any] = {"points": len(points), "d_values": [p.d for p in points], "r_values": [p.r for p in points]}
        return ExperimentResult(config.name, config.kind, summary, records=records)

    payoff = _payoff(section, prior)
    curve = rg_curve(prior, payoff, s_values, r_target=section.r_target)
    at_zero = rg_point(prior, payoff, 0.0)
    at_one = rg_point(prior, payoff, 1.0)
    summary = {
        "points": len(curve.points),
        "g_at_s0": at_zero.g,
        "r_at_s0": max(at_zero.r, 0.0) + 0.0,  # mutual information, so no negative zero
        "r_minus_g_at_s1": abs(at_one.r - at_one.g),
        "max_lambda_deviation_at_s1": float(np.max(np.abs(at_one.lambdas - 1.0))),
        "max_slope_relative_error": _slope_error(curve),
        "g_plus": curve.g_plus,
        "g_minus": curve.g_minus,
    }
    if section.counter_truth is not None:
        b = float(payoff.entries[0, 0])
        a = float(payoff.entries[0, 1])
        errors = [
            abs(point.r - rg_binary_closed_form(point.g, a, b, prior)) for point in curve.points if a < point.g < b
        ]
        summary.update(
            {
                "payoff_a": a,
                "payoff_b": b,
                "payoff_c": (a + b) / 2.0,
                "closed_form_max_error": max(errors) if errors else None,
            }
        )
    return ExperimentResult(config.name, config.kind, summary, trace=curve)


# Trials


def _run_trials(config: ExperimentConfig) -> ExperimentResult:
    section = config.trials
    report = run_trials(section, grid=_grid(config), tol=config.tol, base_seed=config.seed)
    records = [result.as_record() for result in report.results]
    return ExperimentResult(config.name, config.kind, dict(report.statistics), records=records)


_RUNNERS = {
    ExperimentKind.TEST: _run_test,
    ExperimentKind.ESTIMATION: _run_test,
    ExperimentKind.MIXTURE: _run_mixture,
    ExperimentKind.EM: _run_mixture,
    ExperimentKind.RG_CURVE: _run_rg,
    ExperimentKind.TRIALS: _run_trials,
}


def _within(actual: Any, expected: Any, tol: float) -> bool:
    if isinstance(expected, (list, tuple)):
        if not isinstance(actual, (list, tuple)) or len(actual) != len(expected):
            return False
        return all(_within(a, e, tol) for a, e in zip(actual, expected))
    if isinstance(expected, bool) or isinstance(expected, str):
        return actual == expected
    if actual is None or isinstance(actual, bool):
        return False
    return math.isfinite(float(actual)) and abs(float(actual) - float(expected)) <= tol


def evaluate_checks(summary: Dict[str, Any], checks: Sequence[CheckConfig]) -> List[CheckOutcome]:
    """
    Compare summary metrics against expected values and bounds.

    Lists compare elementwise within the same tolerance; min and max bound scalars.
    """
    outcomes = []
    for check in checks:
        if check.metric not in summary:
            outcomes.append(CheckOutcome(check.metric, False, detail="metric missing from summary"))
            continue
        actual = summary[check.metric]
        problems = []
        if check.expected is not None and not _within(actual, check.expected, check.tol):
            problems.append(f"expected {check.expected} +/- {check.tol}")
        if check.min is not None and (actual is None or actual < check.min):
            problems.append(f"below minimum {check.min}")
        if check.max is not None and (actual is None or actual > check.max):
            problems.append(f"above maximum {check.max}")
        outcome = CheckOutcome(check.metric, not problems, actual, "; ".join(problems))
        if not outcome.passed:
            logger.warning("Check failed", metric=check.metric, actual=actual, detail=outcome.detail)
        outcomes.append(outcome)
    return outcomes


def run_experiment(config: ExperimentConfig) -> ExperimentResult:
    """
    Run an experiment and evaluate its checks.

    Args:
        config: Parsed experiment configuration

    Returns:
        ExperimentResult
    """
    with experiment_context(config.name, config.kind.value):
        logger.info("Running experiment")
        result = _RUNNERS[config.kind](config)
        result.checks = evaluate_checks(result.summary, config.checks)
        logger.info("Experiment finished", passed=result.passed, checks=len(result.checks))
    return result


def write_outputs(result: ExperimentResult, out_dir: Path, fmt: str = "csv") -> Dict[str, Path]:
    """
    Write the trace and summary of a result.

    Mixture fits also get series.{fmt}, one row per iteration; tests and estimations
    get curves.{fmt}, the information curves after the first and the last Right-step.

    Returns:
        Mapping of artifact name to path
    """
    out_dir = Path(out_dir)
    trace_path = out_dir / f"trace.{fmt}"
    if result.trace is not None:
        export_trace(result.trace, trace_path, fmt)
    else:
        export_records(result.records or [], trace_path, fmt, columns=MIXTURE_COLUMNS)
    paths = {"trace": trace_path}
    if isinstance(result.trace, MixtureTrace):
        paths["series"] = export_records(
            iteration_series(result.trace), out_dir / f"series.{fmt}", fmt, columns=SERIES_COLUMNS
        )
    elif isinstance(result.trace, TestTrace):
        paths["curves"] = export_records(
            information_curves(result.trace), out_dir / f"curves.{fmt}", fmt, columns=["z"]
        )
    summary = {
        "name": result.name,
        "kind": result.kind.value,
        "passed": result.passed,
        "metrics": result.summary,
        "checks": [check.__dict__ for check in result.checks],
    }
    paths["summary"] = write_summary(summary, out_dir / "summary.json")
    return paths


def run_preset(
    name: str,
    out_dir: Optional[Path] = None,
    fmt: Optional[str] = None,
    tol: Optional[float] = None,
    seed: Optional[int] = None,
) -> ExperimentResult:
    """
    Run a named preset and write its outputs.

    Raises:
        UnknownPresetError: If no preset has that name
    """
    config = apply_overrides(load_preset(name), tol=tol, seed=seed)
    result = run_experiment(config)
    out_dir = out_dir or get_settings().output_dir / name
    write_outputs(result, out_dir, fmt or config.output.format)
    return result
