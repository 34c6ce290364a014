"""Tests for truth functions, semantic Bayes and semantic information measures."""

import numpy as np
import pytest

from src.core.errors import (
    EmptyFuzzySetError,
    EmptyHypothesisError,
    InvalidParameterError,
    UndefinedConfidenceError,
    UndefinedRatioError,
)
from src.core.information import (
    SATURATED_BITS,
    conditional_entropy,
    entropy,
    kl_divergence,
    mutual_information,
)
from src.core.probability import Alphabet, Channel, Distribution, channel_stats
from src.semantic import (
    ConfidenceLevels,
    SampleCounts,
    SemanticChannel,
    TruthRow,
    confidence_truth,
    gaussian_truth_row,
    log_likelihood_ratio,
    log_normalized_likelihood,
    logical_probability,
    matched_semantic_channel,
    no_confidence_from_channel,
    optimize_truth_row_from_channel,
    optimize_truth_row_from_sampling,
    semantic_bayes,
    semantic_info_point,
    semantic_kl_info,
    semantic_mutual_info,
)

STATUS = Alphabet.classes(["x0", "x1"])
POSITIVE_TRUTH = TruthRow(STATUS, [0.0011, 1.0])


def _random_semantic_channel(rng, support, n_rows):
    return SemanticChannel.from_matrix(support, rng.uniform(0.05, 1.0, (n_rows, len(support))))


class TestSemanticBayes:
    def test_rare_condition(self):
        likelihood, logical = semantic_bayes(Distribution(STATUS, [0.998, 0.002]), POSITIVE_TRUTH)
        assert logical == pytest.approx(0.0030978, rel=1e-6)
        assert likelihood["x1"] == pytest.approx(0.65, abs=0.005)

    def test_learned_truth_transfers_to_new_prior(self):
        likelihood, _ = semantic_bayes(Distribution(STATUS, [0.9, 0.1]), POSITIVE_TRUTH)
        assert likelihood["x1"] == pytest.approx(0.991, abs=0.002)

    def test_invariant_under_scaling(self, rng, make_distribution):
        prior = make_distribution(rng, 5)
        truth = TruthRow(prior.support, rng.uniform(0.1, 1.0, 5))
        base, _ = semantic_bayes(prior, truth)
        scaled, _ = semantic_bayes(prior, truth.scaled(0.37))
        np.testing.assert_allclose(scaled.mass, base.mass, atol=1e-12)

    def test_empty_fuzzy_set(self):
        prior = Distribution(STATUS, [1.0, 0.0])
        with pytest.raises(EmptyFuzzySetError):
            semantic_bayes(prior, TruthRow(STATUS, [0.0, 1.0]))

    def test_truth_values_must_lie_in_unit_interval(self):
        with pytest.raises(InvalidParameterError):
            TruthRow(STATUS, [0.5, 1.2])

    def test_tautology_has_logical_probability_one(self, rng, make_distribution):
        prior = make_distribution(rng, 4)
        assert logical_probability(prior, TruthRow.tautology(prior.support)) == pytest.approx(1.0)


class TestSemanticInformation:
    def test_point_information(self):
        prior = Distribution(STATUS, [0.998, 0.002])
        assert semantic_info_point(prior, POSITIVE_TRUTH, "x1") == pytest.approx(8.33, abs=0.02)
        assert semantic_info_point(prior, POSITIVE_TRUTH, "x0") == pytest.approx(-1.494, abs=0.02)

    def test_false_hypothesis_saturates(self):
        prior = Distribution(STATUS, [0.5, 0.5])
        assert semantic_info_point(prior, TruthRow(STATUS, [0.0, 1.0]), "x0") == -SATURATED_BITS

    def test_tautology_conveys_nothing(self, rng, make_distribution):
        prior = make_distribution(rng, 4)
        truth = TruthRow.tautology(prior.support)
        assert semantic_kl_info(make_distribution(rng, 4), prior, truth) == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("seed", range(5))
    def test_kl_decomposition(self, seed, make_distribution):
        rng = np.random.default_rng(seed)
        prior = make_distribution(rng, 6)
        sampling = make_distribution(rng, 6)
        truth = TruthRow(prior.support, rng.uniform(0.05, 1.0, 6))
        likelihood, _ = semantic_bayes(prior, truth)
        expected = kl_divergence(sampling, prior) - kl_divergence(sampling, likelihood)
        assert semantic_kl_info(sampling, prior, truth) == pytest.approx(expected, abs=1e-9)

    def test_matched_channel_reaches_shannon_information(self, rng, make_channel, make_distribution):
        prior = make_distribution(rng, 5)
        channel = make_channel(rng, 5, 3)
        sem = matched_semantic_channel(channel)
        result = semantic_mutual_info(prior, channel, sem)
        assert result.i_x_theta == pytest.approx(mutual_information(prior, channel), abs=1e-9)
        assert all(row.is_optimized for row in sem.rows)

    @pytest.mark.parametrize("seed", range(20))
    def test_bounded_by_shannon_information(self, seed, make_channel, make_distribution):
        rng = np.random.default_rng(seed)
        prior = make_distribution(rng, 5)
        channel = make_channel(rng, 5, 3)
        result = semantic_mutual_info(prior, channel, _random_semantic_channel(rng, prior.support, 3))
        assert result.i_x_theta <= mutual_information(prior, channel) + 1e-9
        assert result.h_x_given_theta >= conditional_entropy(prior, channel) - 1e-9
        assert result.i_x_theta + result.h_x_given_theta == pytest.approx(entropy(prior), abs=1e-9)


class TestOptimizedTruth:
    def test_from_channel_row(self):
        row = optimize_truth_row_from_channel([0.95, 0.05], STATUS)
        np.testing.assert_allclose(row.values, [1.0, 0.05 / 0.95])

    def test_zero_row(self):
        with pytest.raises(EmptyHypothesisError):
            optimize_truth_row_from_channel([0.0, 0.0], STATUS)

    def test_sampling_and_channel_agree(self, rng, make_channel, make_distribution):
        prior = make_distribution(rng, 5)
        channel = make_channel(rng, 5, 3)
        stats = channel_stats(prior, channel)
        for j in range(3):
            from_sampling = optimize_truth_row_from_sampling(stats.posteriors[j], prior)
            from_channel = optimize_truth_row_from_channel(channel.row(j), prior.support)
            np.testing.assert_allclose(from_sampling.values, from_channel.values, atol=1e-9)

    def test_sampling_outside_prior_support(self):
        with pytest.raises(UndefinedRatioError):
            optimize_truth_row_from_sampling(Distribution(STATUS, [0.5, 0.5]), Distribution(STATUS, [1.0, 0.0]))

    def test_gaussian_row_peaks_at_one(self, grid):
        row = gaussian_truth_row(grid, 40, 5)
        assert row[40] == 1.0
        assert row.is_optimized


class TestConfidence:
    def test_full_confidence_is_crisp(self):
        base = TruthRow(STATUS, [0.0, 1.0])
        np.testing.assert_allclose(confidence_truth(base, 1.0).values, [0.0, 1.0])

    def test_no_confidence_is_tautology(self):
        base = TruthRow(STATUS, [0.0, 1.0])
        np.testing.assert_allclose(confidence_truth(base, 0.0).values, [1.0, 1.0])

    def test_counterexample_truth_value(self):
        base = TruthRow(Alphabet.classes(["x1", "x0"]), [1.0, 0.0])
        np.testing.assert_allclose(confidence_truth(base, 0.9989).values, [1.0, 0.0011], atol=1e-12)

    def test_negative_confidence(self):
        base = TruthRow(STATUS, [1.0, 0.0])
        np.testing.assert_allclose(confidence_truth(base, -0.3).values, [0.4, 0.7])

    def test_rejects_fuzzy_base(self):
        with pytest.raises(InvalidParameterError):
            confidence_truth(TruthRow(STATUS, [0.5, 1.0]), 0.5)

    def test_levels(self):
        assert ConfidenceLevels.from_confidence([0.9, -0.5]).b_prime == pytest.approx((0.1, 0.5))
        with pytest.raises(InvalidParameterError):
            ConfidenceLevels.from_confidence([1.5])


class TestNoConfidence:
    def test_screening_test(self):
        # columns x0, x1; rows y0 (negative), y1 (positive)
        channel = Channel(STATUS, Alphabet(("y0", "y1")), [[0.95, 0.05], [0.05, 0.95]])
        report = no_confidence_from_channel(channel)
        assert report.b1_prime == pytest.approx(0.0526, abs=1e-4)
        assert report.lr_plus == pytest.approx(19.0)
        assert report.levels.b_prime == (report.b0_prime, report.b1_prime)

    def test_noiseless_test_saturates(self):
        report = no_confidence_from_channel(Channel.identity(STATUS))
        assert report.b1_prime == 0.0 and report.b0_prime == 0.0
        assert report.lr_plus == SATURATED_BITS

    def test_useless_test(self):
        channel = Channel(STATUS, Alphabet(("y0", "y1")), [[0.5, 0.5], [0.5, 0.5]])
        assert no_confidence_from_channel(channel).b1_prime == pytest.approx(1.0)

    def test_zero_sensitivity(self):
        channel = Channel(STATUS, Alphabet(("y0", "y1")), [[0.9, 1.0], [0.1, 0.0]])
        with pytest.raises(UndefinedConfidenceError):
            no_confidence_from_channel(channel)


class TestSampleLikelihood:
    def test_no_samples(self, rng):
        support = Alphabet(tuple(range(3)))
        counts = SampleCounts(support, Alphabet(("a", "b")), np.zeros((3, 2)))
        sem = _random_semantic_channel(rng, support, 2)
        assert log_normalized_likelihood(counts, Distribution.uniform(support), sem) == 0.0

    def test_scales_with_semantic_information(self, rng):
        support = Alphabet(tuple(range(4)))
        counts = SampleCounts(support, Alphabet(("a", "b", "c")), rng.integers(1, 50, (4, 3)))
        prior = counts.empirical_prior()
        sem = _random_semantic_channel(rng, support, 3)
        expected = counts.total * semantic_mutual_info(prior, counts.empirical_channel(), sem).i_x_theta
        assert log_normalized_likelihood(counts, prior, sem) == pytest.approx(expected, rel=1e-9, abs=1e-9)

    def test_counts_must_be_integers(self):
        with pytest.raises(InvalidParameterError):
            SampleCounts(STATUS, Alphabet(("a",)), [[1.5], [2.0]])


class TestLikelihoodRatio:
    def test_identical_hypotheses(self, rng, make_distribution):
        prior = make_distribution(rng, 4)
        truth = TruthRow(prior.support, rng.uniform(0.1, 1.0, 4))
        regions = (make_distribution(rng, 4), make_distribution(rng, 4))
        assert log_likelihood_ratio(prior, regions, (0.3, 0.7), truth, truth, 100) == pytest.approx(0.0, abs=1e-9)

    def test_matches_direct_sum(self, rng, make_distribution):
        prior = make_distribution(rng, 3)
        pos = TruthRow(prior.support, [0.1, 0.5, 1.0])
        neg = TruthRow(prior.support, [1.0, 0.4, 0.05])
        sampling_pos, sampling_neg = make_distribution(rng, 3), make_distribution(rng, 3)
        like_pos, _ = semantic_bayes(prior, pos)
        like_neg, _ = semantic_bayes(prior, neg)
        n, w_pos = 200, 0.25
        expected = n * w_pos * np.sum(sampling_pos.mass * np.log2(like_pos.mass / like_neg.mass)) + n * (
            1 - w_pos
        ) * np.sum(sampling_neg.mass * np.log2(like_neg.mass / like_pos.mass))
        actual = log_likelihood_ratio(prior, (sampling_pos, sampling_neg), (w_pos, 1 - w_pos), pos, neg, n)
        assert actual == pytest.approx(expected, rel=1e-9)

    def test_weights_must_sum_to_one(self, make_distribution, rng):
        prior = make_distribution(rng, 3)
        truth = TruthRow.tautology(prior.support)
        with pytest.raises(InvalidParameterError):
            log_likelihood_ratio(prior, (prior, prior), (0.5, 0.6), truth, truth, 10)
