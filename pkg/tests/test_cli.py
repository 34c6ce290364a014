"""Tests for the cm-lab command line."""

import json

import pytest

from src.main import EXIT_CHECKS_FAILED, EXIT_OK, EXIT_USAGE, main

FAILING_TEST = """
name: failing
kind: test
test:
  priors: [0.8, 0.2]
  centers: [30, 70]
  stddevs: [15, 10]
  init_boundaries: [50]
checks:
  - {metric: boundaries, expected: [10]}
"""


def test_list_presets(capsys):
    assert main(["list-presets"]) == EXIT_OK
    names = capsys.readouterr().out.split()
    assert "test-ex1" in names and "mix-ex2" in names


def test_preset_writes_outputs(tmp_path, capsys):
    assert main(["preset", "test-ex1", "--out", str(tmp_path)]) == EXIT_OK
    summary = json.loads((tmp_path / "summary.json").read_text())
    assert summary["passed"] is True
    assert summary["metrics"]["boundaries"] == [54]
    assert (tmp_path / "trace.csv").read_text().startswith("iteration,boundaries,I_X_Theta,I_X_Y\n")
    assert "ok" in capsys.readouterr().out


def test_unknown_preset(tmp_path):
    assert main(["preset", "nope", "--out", str(tmp_path)]) == EXIT_USAGE


def test_failed_check(tmp_path):
    config = tmp_path / "failing.yaml"
    config.write_text(FAILING_TEST)
    assert main(["run", str(config), "--out", str(tmp_path / "out")]) == EXIT_CHECKS_FAILED
    assert json.loads((tmp_path / "out" / "summary.json").read_text())["passed"] is False


def test_invalid_config(tmp_path):
    config = tmp_path / "broken.yaml"
    config.write_text("name: [")
    assert main(["run", str(config)]) == EXIT_USAGE


def test_missing_config(tmp_path):
    assert main(["run", str(tmp_path / "absent.yaml")]) == EXIT_USAGE


def test_kind_must_match_command(tmp_path):
    config = tmp_path / "test.yaml"
    config.write_text(FAILING_TEST)
    assert main(["trials", str(config)]) == EXIT_USAGE


def test_rejected_parameters(tmp_path):
    config = tmp_path / "bad.yaml"
    config.write_text(FAILING_TEST.replace("stddevs: [15, 10]", "stddevs: [15, -1]"))
    assert main(["run", str(config), "--out", str(tmp_path / "out")]) == EXIT_USAGE


def test_json_format(tmp_path):
    assert main(["preset", "test-ex2", "--out", str(tmp_path), "--format", "json"]) == EXIT_OK
    rows = json.loads((tmp_path / "trace.json").read_text())
    assert rows[-1]["boundaries"] == "47 59"


def test_usage_error():
    with pytest.raises(SystemExit) as excinfo:
        main(["preset"])
    assert excinfo.value.code == EXIT_USAGE
