"""Command-line experiment runner."""

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

from .config.experiment_config import ExperimentConfig, ExperimentKind
from .config.settings import get_settings
from .core.errors import CMError, ConfigError
from .experiments import (
    ExperimentResult,
    apply_overrides,
    list_presets,
    load_preset,
    run_experiment,
    to_plain,
    write_outputs,
)
from .utils.logging import configure_logging, get_logger

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_CHECKS_FAILED = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subcommand per experiment entry point."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", type=Path, default=None, help="Output directory")
    common.add_argument("--tol", type=float, default=None, help="H(Q||P) stop threshold in bits")
    common.add_argument("--seed", type=int, default=None, help="Base seed for random trials")
    common.add_argument("--format", choices=["csv", "json"], default=None, help="Trace file format")
    common.add_argument("--log-level", default=None, help="Log level (DEBUG switches to JSON logs)")

    parser = argparse.ArgumentParser(prog="cm-lab", description="Channels' matching experiments")
    sub = parser.add_subparsers(dest="command", required=True)

    preset = sub.add_parser("preset", parents=[common], help="Run a named preset")
    preset.add_argument("name", help="Preset name (see list-presets)")

    for command, help_text in (
        ("run", "Run any experiment file"),
        ("trials", "Run random mixture trials"),
        ("rg", "Sweep an R(G) function"),
    ):
        cmd = sub.add_parser(command, parents=[common], help=help_text)
        cmd.add_argument("config", type=Path, help="Experiment YAML file")

    sub.add_parser("list-presets", parents=[common], help="List preset names")
    return parser


def _load(args: argparse.Namespace) -> ExperimentConfig:
    if args.command == "preset":
        config = load_preset(args.name)
    else:
        config = ExperimentConfig.from_file(args.config)
        required = {"trials": ExperimentKind.TRIALS, "rg": ExperimentKind.RG_CURVE}.get(args.command)
        if required is not None and config.kind is not required:
            raise ConfigError(f"'{args.command}' needs an experiment of kind {required.value!r}, got {config.kind.value!r}")
    return apply_overrides(config, tol=args.tol, seed=args.seed)


def _report(result: ExperimentResult) -> None:
    print(json.dumps(to_plain({"name": result.name, "passed": result.passed, "metrics": result.summary}), sort_keys=True))
    for check in result.checks:
        status = "ok" if check.passed else "FAILED"
        print(f"{status:6} {check.metric}: {to_plain(check.actual)} {check.detail}".rstrip())


def main(argv: Optional[List[str]] = None) -> int:
    """
    Parse arguments, run the experiment and write its outputs.

    Returns:
        0 when every check passed, 1 when a check failed, 2 on usage or config errors
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level)

    if args.command == "list-presets":
        for name in list_presets():
            print(name)
        return EXIT_OK

    try:
        config = _load(args)
    except ConfigError as e:
        logger.error("Cannot load experiment", error=str(e))
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    try:
        result = run_experiment(config)
    except CMError as e:
        logger.error("Experiment parameters rejected", name=config.name, error=str(e))
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    out_dir = args.out or config.output.directory or get_settings().output_dir / config.name
    paths = write_outputs(result, Path(out_dir), args.format or config.output.format)
    logger.info("Outputs written", **{k: str(v) for k, v in paths.items()})
    _report(result)
    return EXIT_OK if result.passed else EXIT_CHECKS_FAILED


def run() -> None:
    """Console script entry point."""
    sys.exit(main())


if __name__ == "__main__":
    run()
