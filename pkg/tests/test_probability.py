"""Tests for alphabets, distributions, channels and discretized Gaussians."""

import math

import numpy as np
import pytest

from src.core.errors import (
    DegenerateDistributionError,
    InvalidParameterError,
    SupportMismatchError,
)
from src.core.probability import Alphabet, Channel, Distribution, channel_stats, discretized_gaussian


class TestAlphabet:
    def test_grid_is_inclusive(self):
        grid = Alphabet.grid(1, 100)
        assert len(grid) == 100
        assert grid.labels[0] == 1 and grid.labels[-1] == 100
        assert grid.is_grid

    def test_fractional_grid(self):
        grid = Alphabet.grid(0, 1, 0.25)
        assert grid.labels == (0.0, 0.25, 0.5, 0.75, 1.0)

    def test_rejects_duplicates(self):
        with pytest.raises(InvalidParameterError):
            Alphabet(("a", "a"))

    def test_rejects_unordered_grid(self):
        with pytest.raises(InvalidParameterError):
            Alphabet((3, 1, 2))

    def test_rejects_empty(self):
        with pytest.raises(InvalidParameterError):
            Alphabet(())

    def test_class_labels_are_not_a_grid(self):
        classes = Alphabet.classes(["negative", "positive"])
        assert not classes.is_grid
        assert classes.index("positive") == 1
        with pytest.raises(SupportMismatchError):
            classes.index("unknown")


class TestDistribution:
    def test_masses_must_sum_to_one(self):
        with pytest.raises(InvalidParameterError):
            Distribution(Alphabet((0, 1)), [0.5, 0.6])

    def test_negative_mass(self):
        with pytest.raises(InvalidParameterError):
            Distribution(Alphabet((0, 1)), [1.5, -0.5])

    def test_from_weights_normalizes(self):
        dist = Distribution.from_weights(Alphabet(("a", "b")), [3, 1])
        assert dist["a"] == pytest.approx(0.75)

    def test_zero_weights(self):
        with pytest.raises(DegenerateDistributionError):
            Distribution.from_weights(Alphabet(("a", "b")), [0, 0])

    def test_mass_is_read_only(self):
        dist = Distribution.uniform(Alphabet((0, 1)))
        with pytest.raises(ValueError):
            dist.mass[0] = 1.0


class TestDiscretizedGaussian:
    def test_sums_to_one_with_mode_at_center(self, grid):
        dist = discretized_gaussian(grid, 30, 15)
        assert dist.mass.sum() == pytest.approx(1.0, abs=1e-9)
        assert grid.labels[int(np.argmax(dist.mass))] == 30

    def test_symmetric_around_center(self, grid):
        dist = discretized_gaussian(grid, 50, 10)
        assert dist[40] == pytest.approx(dist[60], rel=1e-12)

    def test_ratio_independent_of_normalization(self, grid):
        dist = discretized_gaussian(grid, 70, 10)
        assert dist[70] / dist[80] == pytest.approx(math.exp(0.5), rel=1e-12)

    @pytest.mark.parametrize("stddev", [0.0, -1.0])
    def test_rejects_non_positive_stddev(self, grid, stddev):
        with pytest.raises(InvalidParameterError):
            discretized_gaussian(grid, 50, stddev)

    def test_underflow_on_whole_grid(self, grid):
        with pytest.raises(DegenerateDistributionError):
            discretized_gaussian(grid, 1e6, 1.0)


class TestChannelStats:
    def test_identity_channel(self):
        prior = Distribution(Alphabet((0, 1)), [0.3, 0.7])
        stats = channel_stats(prior, Channel.identity(prior.support))
        np.testing.assert_allclose(stats.marginal_y.mass, [0.3, 0.7])
        np.testing.assert_allclose(stats.posteriors[0].mass, [1.0, 0.0])
        np.testing.assert_allclose(stats.posteriors[1].mass, [0.0, 1.0])
        assert stats.undefined_rows == ()

    def test_constant_channel_flags_unused_output(self):
        prior = Distribution(Alphabet((0, 1, 2)), [0.2, 0.3, 0.5])
        channel = Channel(prior.support, Alphabet(("y1", "y2")), [[1, 1, 1], [0, 0, 0]])
        stats = channel_stats(prior, channel)
        np.testing.assert_allclose(stats.marginal_y.mass, [1.0, 0.0])
        np.testing.assert_allclose(stats.posteriors[0].mass, prior.mass)
        assert stats.undefined_rows == (1,)

    @pytest.mark.parametrize("seed", range(5))
    def test_joint_sums_to_one(self, seed, make_channel, make_distribution):
        rng = np.random.default_rng(seed)
        prior = make_distribution(rng, 4)
        stats = channel_stats(prior, make_channel(rng, 4, 3))
        assert stats.joint.sum() == pytest.approx(1.0, abs=1e-9)
        np.testing.assert_allclose(stats.joint.sum(axis=0), stats.marginal_y.mass, atol=1e-9)

    def test_columns_must_be_normalized(self):
        with pytest.raises(InvalidParameterError):
            Channel(Alphabet((0, 1)), Alphabet((0, 1)), [[0.5, 0.5], [0.6, 0.5]])

    def test_input_alphabet_must_match_prior(self):
        prior = Distribution.uniform(Alphabet((0, 1)))
        with pytest.raises(SupportMismatchError):
            channel_stats(prior, Channel.identity(Alphabet(("a", "b"))))
