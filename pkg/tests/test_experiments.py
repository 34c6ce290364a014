"""Tests for experiment configs, checks, trials and export."""

import json
import math
import os
from pathlib import Path

import numpy as np
import pandas as pd
import pytest
import structlog

from src.config.experiment_config import CheckConfig, ExperimentConfig, TrialsConfig
from src.core.errors import ConfigError, UnknownPresetError
from src.core.probability import Alphabet, Distribution
from src.estimation import Partition, run_cm_test
from src.experiments import (
    TrialResult,
    evaluate_checks,
    export_records,
    export_trace,
    generate_trial,
    information_curves,
    iteration_series,
    iteration_statistics,
    list_presets,
    load_preset,
    run_experiment,
    run_preset,
    run_trials,
    to_plain,
    write_outputs,
)
from src.experiments.export import MIXTURE_COLUMNS
from src.mixture import MixtureTrace, run_cm_mixture, run_em
from src.rg import rg_curve, symmetric_binary_payoff
from src.utils.async_utils import batch_process, run_pool
from src.utils.logging import experiment_context

PRESETS = ["mix-ex1", "mix-ex2", "rg-binary", "test-ex1", "test-ex2", "test-ex3-bad", "test-ex3-good"]
CONFIG_FILES = sorted((Path(__file__).parent.parent / "config").glob("*/*.yaml"))

MINIMAL_TEST = """
name: custom
kind: test
test:
  priors: [0.8, 0.2]
  centers: [30, 70]
  stddevs: [15, 10]
  init_boundaries: [50]
"""


def _square(x):
    return x * x


def _worker_pid(_):
    return os.getpid()


class TestExperimentConfig:
    def test_presets_are_listed(self):
        assert list_presets() == PRESETS

    @pytest.mark.parametrize("name", PRESETS)
    def test_yaml_round_trip(self, name):
        config = load_preset(name)
        assert ExperimentConfig.from_yaml(config.to_yaml()) == config

    @pytest.mark.parametrize("path", CONFIG_FILES, ids=lambda p: f"{p.parent.name}/{p.name}")
    def test_every_config_file_loads(self, path):
        config = ExperimentConfig.from_file(path)
        assert config.name == path.stem

    @pytest.mark.parametrize("name", ["mix-ex1", "mix-ex2"])
    def test_mixture_presets_keep_true_model(self, name):
        section = load_preset(name).mixture
        assert len(section.true_model.centers) == 2
        assert section.true_model.weights is not None

    def test_unknown_preset(self):
        with pytest.raises(UnknownPresetError):
            load_preset("nope")

    def test_unknown_key_rejected(self):
        with pytest.raises(ConfigError):
            ExperimentConfig.from_yaml(MINIMAL_TEST + "surprise: 1\n")

    def test_missing_section(self):
        with pytest.raises(ConfigError):
            ExperimentConfig.from_yaml("name: x\nkind: mixture\n")

    def test_single_payoff_source(self):
        text = "name: x\nkind: rg_curve\nrg:\n  prior: [0.5, 0.5]\n  counter_truth: 0.2\n"
        text += "  distortion: [[0, 1], [1, 0]]\n  s_values: [1]\n"
        with pytest.raises(ConfigError):
            ExperimentConfig.from_yaml(text)

    def test_invalid_yaml(self):
        with pytest.raises(ConfigError):
            ExperimentConfig.from_yaml("name: [")

    def test_check_needs_condition(self):
        with pytest.raises(ValueError):
            CheckConfig(metric="iterations")


class TestChecks:
    def test_scalar_list_and_bounds(self):
        summary = {"g": 0.471, "boundaries": [47, 59], "converged": True, "steps": 5}
        checks = [
            CheckConfig(metric="g", expected=0.47, tol=0.01),
            CheckConfig(metric="boundaries", expected=[47, 59]),
            CheckConfig(metric="converged", expected=True),
            CheckConfig(metric="steps", min=3, max=4),
            CheckConfig(metric="absent", max=1),
        ]
        outcomes = evaluate_checks(summary, checks)
        assert [o.passed for o in outcomes] == [True, True, True, False, False]
        assert "above maximum" in outcomes[3].detail
        assert outcomes[4].detail == "metric missing from summary"

    def test_bool_is_not_a_number(self):
        outcome = evaluate_checks({"x": True}, [CheckConfig(metric="x", expected=1)])[0]
        assert not outcome.passed


class TestPresetRuns:
    def test_binary_test_preset(self):
        result = run_experiment(load_preset("test-ex1"))
        assert result.passed
        assert result.summary["boundaries"] == [54]

    def test_run_preset_writes_outputs(self, tmp_path):
        result = run_preset("test-ex3-good", out_dir=tmp_path, fmt="json")
        assert result.passed
        summary = json.loads((tmp_path / "summary.json").read_text())
        assert summary["passed"] is True
        assert summary["metrics"]["boundaries"] == [36, 65]
        assert json.loads((tmp_path / "trace.json").read_text())[-1]["boundaries"] == "36 65"

    def test_rg_summary_has_no_negative_zero(self):
        text = "name: rg-small\nkind: rg_curve\nrg:\n  prior: [0.5, 0.5]\n  counter_truth: 0.2\n  s_values: [0.0, 1.0, 2.0]\n"
        rate = run_experiment(ExperimentConfig.from_yaml(text)).summary["r_at_s0"]
        assert rate == pytest.approx(0.0, abs=1e-12)
        assert math.copysign(1.0, rate) == 1.0

    @pytest.mark.slow
    def test_rg_preset(self):
        assert run_experiment(load_preset("rg-binary")).passed


class TestTrials:
    def test_generated_models(self, grid):
        config = TrialsConfig(count=1)
        for seed in range(20):
            true, init = generate_trial(seed, config, grid)
            assert true.centers[1] - true.centers[0] >= config.min_separation
            assert all(5 <= d <= 15 for d in true.stddevs)
            assert init.centers == [37.5, 62.5]
            assert init.stddevs == [15.0, 15.0]
            assert list(init.weights) == [0.5, 0.5]

    def test_custom_start(self, grid):
        config = TrialsConfig(count=1, start_centers=[30, 70], start_stddevs=[10, 10])
        first, init = generate_trial(3, config, grid)
        second, _ = generate_trial(4, config, grid)
        assert init.centers == [30.0, 70.0]
        assert first.centers != second.centers

    def test_start_needs_two_components(self):
        with pytest.raises(ValueError):
            TrialsConfig(start_centers=[30, 50, 70])

    def test_seeded_and_ordered(self):
        config = TrialsConfig(count=4)
        first = run_trials(config, base_seed=7, workers=2)
        second = run_trials(config, base_seed=7, workers=1)
        assert [r.seed for r in first.results] == [7, 8, 9, 10]
        assert [r.as_record() for r in first.results] == [r.as_record() for r in second.results]
        assert first.statistics["count"] == 4
        assert first.statistics["monotonicity_violations"] == 0

    @pytest.mark.slow
    def test_right_step_distribution(self):
        stats = run_trials(TrialsConfig(count=300), base_seed=20170101, tol=1e-3, workers=4).statistics
        assert 3 <= stats["right_steps_mode"] <= 7
        assert stats["right_steps_median"] <= 10
        assert stats["failure_rate"] <= 0.03
        assert stats["monotonicity_violations"] == 0

    def test_statistics(self):
        results = [
            TrialResult(seed=0, converged=True, right_steps=5),
            TrialResult(seed=1, converged=True, right_steps=5),
            TrialResult(seed=2, converged=True, right_steps=9),
            TrialResult(seed=3, converged=False, right_steps=200, error="ComponentStarvedError: x"),
        ]
        stats = iteration_statistics(results)
        assert stats["count"] == 4
        assert stats["failures"] == 1
        assert stats["failure_rate"] == pytest.approx(0.25)
        assert stats["errors"] == 1
        assert stats["right_steps_mode"] == 5
        assert stats["right_steps_median"] == 5
        assert stats["right_steps_max"] == 9

    def test_empty_statistics(self):
        assert iteration_statistics([])["count"] == 0


class TestExport:
    def test_empty_trace_writes_header_only(self, tmp_path):
        path = export_trace(MixtureTrace(target=Distribution.uniform(Alphabet((0, 1)))), tmp_path / "t.csv")
        assert path.read_bytes() == (",".join(MIXTURE_COLUMNS) + "\n").encode()

    def test_mixture_trace_csv(self, tmp_path, low_rate_mixture):
        true, init = low_rate_mixture
        path = export_trace(run_cm_mixture(true, init), tmp_path / "trace.csv")
        assert b"\r" not in path.read_bytes()
        frame = pd.read_csv(path)
        assert list(frame.columns[: len(MIXTURE_COLUMNS)]) == MIXTURE_COLUMNS
        assert frame["step_kind"].iloc[0] == "left_a"
        assert (frame["H_QP"].diff().dropna() <= 1e-8).all()

    def test_mixture_iteration_series(self, low_rate_mixture):
        true, init = low_rate_mixture
        trace = run_cm_mixture(true, init)
        series = iteration_series(trace)
        assert len(series) == trace.right_steps + 1
        assert [row["right_steps"] for row in series] == list(range(trace.right_steps + 1))
        assert series[-1]["H_QP"] == pytest.approx(trace.final_monitor.h_qp)
        assert all(b["H_QP"] <= a["H_QP"] + 1e-9 for a, b in zip(series, series[1:]))

    def test_em_iteration_series(self, low_rate_mixture):
        true, init = low_rate_mixture
        trace = run_em(true, init)
        series = iteration_series(trace)
        assert len(series) == trace.right_steps + 1
        assert series[0]["right_steps"] == 0

    def test_write_outputs_adds_series(self, tmp_path):
        result = run_preset("mix-ex2", out_dir=tmp_path)
        paths = write_outputs(result, tmp_path)
        assert set(paths) == {"trace", "series", "summary"}
        frame = pd.read_csv(paths["series"])
        assert list(frame.columns) == ["iteration", "right_steps", "G", "R", "R_Q", "H_QP"]
        assert frame["right_steps"].iloc[-1] == 5
        assert np.allclose(frame["H_QP"], frame["R_Q"] - frame["G"], atol=1e-8)

    def test_information_curves_pick_the_final_partition(self, three_class_test):
        trace = run_cm_test(three_class_test, Partition.from_boundaries(three_class_test.grid, [9, 20], 3))
        frame = pd.DataFrame(information_curves(trace))
        assert len(frame) == 100
        final = frame[["final_0", "final_1", "final_2"]].to_numpy().argmax(axis=1)
        assert tuple(int(j) for j in final) == trace.final_partition.labels
        first = frame[["first_0", "first_1", "first_2"]].to_numpy().argmax(axis=1)
        assert tuple(int(j) for j in first) == trace.steps[0].partition.labels

    def test_write_outputs_adds_curves(self, tmp_path):
        run_preset("test-ex3-bad", out_dir=tmp_path)
        frame = pd.read_csv(tmp_path / "curves.csv")
        assert list(frame.columns) == ["z", "first_0", "first_1", "first_2", "final_0", "final_1", "final_2"]
        assert frame["z"].tolist() == list(range(1, 101))

    def test_rg_curve_csv(self, tmp_path):
        prior = Distribution.uniform(Alphabet((0, 1)))
        curve = rg_curve(prior, symmetric_binary_payoff(0.2, prior), np.linspace(0.5, 3.0, 11))
        frame = pd.read_csv(export_trace(curve, tmp_path / "rg.csv"))
        assert list(frame.columns) == ["s", "G", "R", "efficiency"]
        slopes = frame["R"].diff() / frame["G"].diff()
        mids = frame["s"].rolling(2).mean()
        assert np.allclose(slopes.dropna(), mids.dropna(), rtol=0.05)

    def test_unknown_format(self, tmp_path):
        with pytest.raises(ValueError):
            export_records([], tmp_path / "x.txt", "txt")

    def test_to_plain(self):
        plain = to_plain({"a": np.float64(0.5), "b": np.array([1, 2]), "c": (np.bool_(True), float("nan"))})
        assert plain == {"a": 0.5, "b": [1, 2], "c": [True, None]}


class TestWorkerPool:
    @pytest.mark.asyncio
    async def test_batch_process_keeps_order(self):
        async def double(x):
            return 2 * x

        assert await batch_process(list(range(25)), double, batch_size=4, concurrency=3) == [
            2 * x for x in range(25)
        ]
        assert await batch_process([1, 2, 3], lambda x: x + 1) == [2, 3, 4]

    def test_run_pool(self):
        assert run_pool(list(range(10)), _square, workers=3, batch_size=4) == [x * x for x in range(10)]

    def test_run_pool_uses_worker_processes(self):
        pids = run_pool(list(range(6)), _worker_pid, workers=2, batch_size=6)
        assert len(pids) == 6
        assert os.getpid() not in pids


def test_experiment_context_binds_and_clears():
    with experiment_context("test-ex1", "test"):
        bound = structlog.contextvars.get_contextvars()
        assert (bound["experiment"], bound["kind"]) == ("test-ex1", "test")
    assert "experiment" not in structlog.contextvars.get_contextvars()
