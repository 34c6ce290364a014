"""Shared fixtures."""

from typing import Callable

import numpy as np
import pytest

from src.core.probability import Alphabet, Channel, Distribution
from src.estimation import NeutralMode, TestScenario
from src.mixture import MixtureModel
from src.utils.logging import configure_logging


@pytest.fixture(autouse=True, scope="session")
def quiet_logging():
    configure_logging("WARNING")


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20170101)


@pytest.fixture
def grid() -> Alphabet:
    return Alphabet.grid(1, 100)


@pytest.fixture
def make_distribution() -> Callable[[np.random.Generator, int], Distribution]:
    def build(rng: np.random.Generator, n: int) -> Distribution:
        return Distribution.from_weights(Alphabet(tuple(range(n))), rng.uniform(0.05, 1.0, n))

    return build


@pytest.fixture
def make_channel() -> Callable[[np.random.Generator, int, int], Channel]:
    """Random strictly positive channel with n_x inputs and n_y outputs."""

    def build(rng: np.random.Generator, n_x: int, n_y: int) -> Channel:
        matrix = rng.uniform(0.05, 1.0, (n_y, n_x))
        return Channel(Alphabet(tuple(range(n_x))), Alphabet(tuple(range(n_y))), matrix / matrix.sum(axis=0))

    return build


@pytest.fixture
def binary_test() -> TestScenario:
    """Prior 0.8/0.2, populations centered at 30 and 70."""
    return TestScenario.from_gaussians([0.8, 0.2], [30, 70], [15, 10], class_names=["negative", "positive"])


@pytest.fixture
def neutral_test() -> TestScenario:
    """Same populations with a neutral label between the two dividing points."""
    return TestScenario.from_gaussians(
        [0.8, 0.2],
        [30, 70],
        [15, 10],
        n_labels=3,
        neutral_label=1,
        neutral_mode=NeutralMode.TAUTOLOGY,
    )


@pytest.fixture
def three_class_test() -> TestScenario:
    return TestScenario.from_gaussians([0.5, 0.35, 0.15], [20, 50, 80], [15, 10, 10])


@pytest.fixture
def low_rate_mixture(grid):
    """(true, start) models where the start conveys less information than the truth."""
    true = MixtureModel.from_params([35, 65], [8, 12], [0.7, 0.3], grid=grid)
    init = MixtureModel.from_params([30, 70], [15, 15], [0.5, 0.5], grid=grid)
    return true, init


@pytest.fixture
def high_rate_mixture(grid):
    """(true, start) models where the start conveys more information than the truth."""
    true = MixtureModel.from_params([35, 65], [8, 12], [0.1, 0.9], grid=grid)
    init = MixtureModel.from_params([30, 70], [8, 8], [0.5, 0.5], grid=grid)
    return true, init
