"""Tests for baselines.cv and baselines.config."""

import math

import numpy as np
import pytest

from gmrf_greedy._core.errors import InvalidParameter
from gmrf_greedy.baselines import (
    DEFAULT_C_GRID,
    CVMethod,
    LambdaRule,
    LassoConfig,
    contiguous_folds,
    cv_scores,
    scaled_lambda,
    select_lambda_cv,
)
from gmrf_greedy.models import make_chain_cov, sample_gaussian


@pytest.fixture
def chain_samples():
    return sample_gaussian(make_chain_cov(6, 0.5), 60, seed=3)


class TestLassoConfig:
    """Test penalty settings."""

    def test_scaled(self):
        cfg = LassoConfig.scaled(2.0, 36, 1000)
        assert cfg.rule is LambdaRule.scaled
        assert cfg.lam == pytest.approx(2.0 * math.sqrt(math.log(36) / 1000))
        assert scaled_lambda(0.0, 10, 5) == 0.0

    def test_for_data(self):
        cfg = LassoConfig.scaled(1.0, 10, 100)
        assert cfg.for_data(10, 400).lam == pytest.approx(cfg.lam / 2.0)
        explicit = LassoConfig(lam=0.3)
        assert explicit.for_data(10, 400) is explicit

    @pytest.mark.parametrize("kwargs", [{"lam": -0.1}, {"lam": 0.1, "tol": 0.0}, {"lam": 0.1, "rule": "scaled"}])
    def test_invalid(self, kwargs):
        with pytest.raises(InvalidParameter):
            LassoConfig(**kwargs)


class TestFolds:
    def test_contiguous(self):
        folds = contiguous_folds(10, 3)
        assert [f.tolist() for f in folds] == [[0, 1, 2, 3], [4, 5, 6], [7, 8, 9]]

    def test_default_grid(self):
        assert DEFAULT_C_GRID[0] == 0.1
        assert DEFAULT_C_GRID[-1] == 3.0
        assert len(DEFAULT_C_GRID) == 30


class TestSelectLambdaCv:
    """Test cross-validated selection of the penalty constant."""

    @pytest.mark.parametrize("method", list(CVMethod))
    def test_single_value(self, chain_samples, method):
        assert select_lambda_cv(chain_samples, 3, [0.7], method) == 0.7

    def test_duplicates(self, chain_samples):
        assert select_lambda_cv(chain_samples, 3, [0.5, 0.5], "nbd") == 0.5

    @pytest.mark.parametrize("method", list(CVMethod))
    def test_selects_argmin(self, method):
        samples = sample_gaussian(make_chain_cov(8, 0.5), 200, seed=7)
        grid = [0.2, 0.5, 1.0, 2.0]
        scores = cv_scores(samples, 4, grid, method)
        chosen = select_lambda_cv(samples, 4, grid, method)
        assert set(scores) == set(grid)
        assert all(scores[chosen] <= score for score in scores.values())

    def test_failed_fits_score_inf(self, chain_samples):
        """A fit that cannot converge is scored inf; with every score inf the smallest c wins."""
        base = LassoConfig(lam=0.0, tol=1e-14, max_iter=1)
        scores = cv_scores(chain_samples, 3, [0.0, 0.2], "glasso", base)
        assert scores == {0.0: np.inf, 0.2: np.inf}
        assert select_lambda_cv(chain_samples, 3, [0.2, 0.0], "glasso", base) == 0.0

    @pytest.mark.parametrize(
        ("k", "grid"),
        [(1, [0.5]), (3, []), (3, [-0.5]), (100, [0.5])],
    )
    def test_invalid(self, chain_samples, k, grid):
        with pytest.raises(InvalidParameter):
            cv_scores(chain_samples, k, grid, "glasso")
