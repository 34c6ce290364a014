"""Seeded random two-component mixture trials."""

from dataclasses import asdict, dataclass, field
from functools import partial
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..config.experiment_config import TrialsConfig
from ..config.settings import get_settings
from ..core.errors import CMError
from ..core.probability import Alphabet
from ..mixture import MixtureConfig, MixtureModel, run_cm_mixture, run_em
from ..utils.async_utils import run_pool
from ..utils.logging import get_logger
from .metrics import iteration_statistics

logger = get_logger(__name__)


@dataclass
class TrialResult:
    """Outcome of one random trial."""

    seed: int
    converged: bool
    right_steps: int
    monotonicity_violations: int = 0
    identity_error: float = 0.0
    error: Optional[str] = None
    em_converged: Optional[bool] = None
    em_steps: Optional[int] = None
    true_params: Dict[str, List[float]] = field(default_factory=dict)

    def as_record(self) -> Dict[str, object]:
        record = asdict(self)
        params = record.pop("true_params")
        for key, values in params.items():
            for j, value in enumerate(values, start=1):
                record[f"true_{key}_{j}"] = value
        return record


@dataclass
class TrialsReport:
    """Trial results sorted by seed, with their statistics."""

    results: List[TrialResult]
    statistics: Dict[str, object]


def _draw_centers(rng: np.random.Generator, config: TrialsConfig) -> Tuple[float, float]:
    while True:
        c1, c2 = rng.uniform(config.center_low, config.center_high, size=2)
        if abs(c1 - c2) >= config.min_separation:
            return float(min(c1, c2)), float(max(c1, c2))


def generate_trial(seed: int, config: TrialsConfig, grid: Alphabet) -> Tuple[MixtureModel, MixtureModel]:
    """
    Draw a true two-component model from one seed.

    Every trial starts from the same model (config.start_centers and
    config.start_stddevs, equal weights); only the true parameters vary.

    Returns:
        (true model, start model)
    """
    rng = np.random.default_rng(seed)
    centers = _draw_centers(rng, config)
    stddevs = rng.uniform(config.stddev_low, config.stddev_high, size=2)
    w = float(rng.uniform(config.weight_low, config.weight_high))
    true = MixtureModel.from_params(centers, stddevs, [w, 1.0 - w], grid=grid)
    init = MixtureModel.from_params(config.start_centers, config.start_stddevs, [0.5, 0.5], grid=grid)
    return true, init


def run_trial(seed: int, config: TrialsConfig, grid: Alphabet, tol: float) -> TrialResult:
    """
    Run CM (and optionally EM) on one seeded trial.

    Domain errors are recorded on the result rather than raised.
    """
    true, init = generate_trial(seed, config, grid)
    mixture_config = MixtureConfig(tol=tol, max_right_steps=config.max_right_steps)
    result = TrialResult(seed=seed, converged=False, right_steps=0, true_params=true.as_dict())
    try:
        trace = run_cm_mixture(true, init, mixture_config)
        result.converged = trace.converged
        result.right_steps = trace.right_steps
        result.monotonicity_violations = len(trace.monotonicity_violations())
        result.identity_error = trace.max_identity_error()
        if config.compare_em:
            em_trace = run_em(true, init, mixture_config)
            result.em_converged = em_trace.converged
            result.em_steps = em_trace.right_steps
    except CMError as e:
        logger.warning("Trial failed", seed=seed, error=str(e))
        result.error = f"{type(e).__name__}: {e}"
    return result


def run_trials(
    config: TrialsConfig,
    grid: Optional[Alphabet] = None,
    tol: Optional[float] = None,
    base_seed: Optional[int] = None,
    workers: Optional[int] = None,
) -> TrialsReport:
    """
    Run a batch of seeded trials on a bounded worker pool.

    Trial k uses seed base_seed + k, so the report depends only on the configuration.

    Args:
        config: Trial generation settings
        grid: Observation grid, integers 1..100 by default
        tol: H(Q||P) stop threshold in bits
        base_seed: Overrides config.base_seed
        workers: Overrides config.workers

    Returns:
        TrialsReport
    """
    settings = get_settings()
    grid = grid or Alphabet.grid(1, 100)
    tol = tol if tol is not None else settings.default_tol
    seed0 = base_seed if base_seed is not None else config.base_seed
    seed0 = seed0 if seed0 is not None else settings.default_seed
    workers = workers or config.workers or settings.workers

    seeds = [seed0 + k for k in range(config.count)]
    logger.info("Starting trials", count=config.count, base_seed=seed0, workers=workers)
    results = run_pool(seeds, partial(run_trial, config=config, grid=grid, tol=tol), workers=workers)
    results.sort(key=lambda r: r.seed)
    return TrialsReport(results=results, statistics=iteration_statistics(results))
