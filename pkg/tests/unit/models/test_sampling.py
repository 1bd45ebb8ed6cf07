"""Tests for models.sampling and models.inputs."""

import numpy as np
import pytest

from gmrf_greedy._core.errors import InvalidParameter, NotPositiveDefinite
from gmrf_greedy.linalg import sup_norm_deviation
from gmrf_greedy.models import (
    SampleSet,
    load_samples_csv,
    make_chain_cov,
    population_samples,
    sample_covariance,
    sample_gaussian,
    save_samples_csv,
    trial_seed,
)
from gmrf_greedy.models.inputs import load_inputs


class TestSampleGaussian:
    """Test seeded sampling."""

    def test_deterministic(self):
        first = sample_gaussian(np.eye(2), 3, seed=7)
        second = sample_gaussian(np.eye(2), 3, seed=7)
        np.testing.assert_array_equal(first.data, second.data)
        assert first.seed == 7
        assert first.n == 3
        assert first.p == 2

    def test_seeds_differ(self):
        a = sample_gaussian(np.eye(2), 5, seed=1)
        b = sample_gaussian(np.eye(2), 5, seed=2)
        assert not np.array_equal(a.data, b.data)

    def test_variance(self):
        samples = sample_gaussian(np.diag([4.0, 1.0]), 100_000, seed=1)
        assert 3.9 <= samples.column(0).var() <= 4.1

    def test_correlation(self):
        samples = sample_gaussian(make_chain_cov(3, 0.5), 200_000, seed=2)
        corr = np.corrcoef(samples.data[:, 0], samples.data[:, 1])[0, 1]
        assert 0.49 <= corr <= 0.51

    def test_not_pd(self):
        with pytest.raises(NotPositiveDefinite):
            sample_gaussian(np.array([[1.0, 2.0], [2.0, 1.0]]), 10, seed=0)

    def test_invalid_n(self):
        with pytest.raises(InvalidParameter):
            sample_gaussian(np.eye(2), 0, seed=0)

    def test_trial_seed(self):
        assert trial_seed(0, 5) == 5
        assert trial_seed(6, 3) == 5
        assert trial_seed(12, 0) == 12


class TestSampleCovariance:
    """Test second-moment estimates."""

    def test_single_row(self):
        np.testing.assert_array_equal(sample_covariance(SampleSet(np.array([[1.0, 0.0]]))), [[1.0, 0.0], [0.0, 0.0]])

    def test_no_mean_subtraction(self):
        samples = SampleSet(np.array([[1.0, 1.0], [-1.0, -1.0]]))
        np.testing.assert_array_equal(sample_covariance(samples), [[1.0, 1.0], [1.0, 1.0]])

    def test_concentration(self):
        samples = sample_gaussian(np.eye(3), 1_000_000, seed=3)
        assert sup_norm_deviation(sample_covariance(samples), np.eye(3)) <= 0.01

    def test_deviation_shrinks_with_n(self):
        """Quadrupling n beats the smaller sample in the vast majority of seeded pairs."""
        sigma = make_chain_cov(10, 0.5)
        wins = 0
        for t in range(100):
            small = sample_covariance(sample_gaussian(sigma, 100, seed=2 * t))
            large = sample_covariance(sample_gaussian(sigma, 400, seed=2 * t + 1))
            wins += sup_norm_deviation(large, sigma) < sup_norm_deviation(small, sigma)
        assert wins >= 90

    def test_population_samples_are_exact(self, chain4):
        samples = population_samples(chain4)
        assert samples.population
        assert samples.n == 4
        np.testing.assert_allclose(sample_covariance(samples), chain4, atol=1e-14)


class TestSampleSet:
    """Test SampleSet validation and CSV storage."""

    def test_read_only(self):
        samples = SampleSet(np.zeros((2, 2)))
        with pytest.raises(ValueError):
            samples.data[0, 0] = 1.0

    def test_rejects_non_finite(self):
        with pytest.raises(InvalidParameter):
            SampleSet(np.array([[np.nan, 1.0]]))

    def test_rows(self):
        samples = SampleSet(np.arange(6.0).reshape(3, 2), seed=4)
        sub = samples.rows(slice(1, 3))
        assert sub.n == 2
        assert sub.seed == 4

    def test_csv(self, tmp_path):
        samples = sample_gaussian(np.eye(3), 4, seed=9)
        path = save_samples_csv(samples, tmp_path / "samples.csv")
        np.testing.assert_array_equal(load_samples_csv(path).data, samples.data)


class TestLoadInputs:
    """Test load_inputs."""

    def test_sigma_gives_population_samples(self, matrix_csv, chain4):
        sigma_hat, samples = load_inputs(matrix_csv(chain4), None)
        np.testing.assert_array_equal(sigma_hat, chain4)
        assert samples.population

    def test_data_gives_sample_covariance(self, tmp_path):
        samples = sample_gaussian(np.eye(2), 20, seed=1)
        path = save_samples_csv(samples, tmp_path / "x.csv")
        sigma_hat, loaded = load_inputs(None, path)
        np.testing.assert_allclose(sigma_hat, sample_covariance(samples))
        assert loaded.n == 20

    @pytest.mark.parametrize("both", [True, False])
    def test_exactly_one_source(self, tmp_path, both):
        path = tmp_path / "x.csv"
        with pytest.raises(InvalidParameter):
            load_inputs(path if both else None, path if both else None)
