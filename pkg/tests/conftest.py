"""Shared fixtures for gmrf-greedy tests."""

import numpy as np
import pytest
from typer.testing import CliRunner

from gmrf_greedy.models import make_chain_cov, make_diamond_cov, make_star_cov


@pytest.fixture
def runner():
    """Typer CLI runner."""
    return CliRunner()


@pytest.fixture
def chain4():
    """Population covariance of a 4-node chain with tau = 0.5."""
    return make_chain_cov(4, 0.5)


@pytest.fixture
def star5():
    return make_star_cov(5, 0.4)


@pytest.fixture
def diamond():
    return make_diamond_cov(0.3)


@pytest.fixture
def pair_sigma():
    """2x2 covariance with unit variances and correlation 0.5."""
    return np.array([[1.0, 0.5], [0.5, 1.0]])


@pytest.fixture
def matrix_csv(tmp_path):
    """Write a matrix to CSV and return its path."""

    def _write(matrix, name="sigma.csv"):
        path = tmp_path / name
        np.savetxt(path, np.asarray(matrix, dtype=float), delimiter=",", fmt="%.17g")
        return path

    return _write


@pytest.fixture
def random_precision():
    """Random ``Theta = Q diag(lam) Q^T`` with eigenvalues in ``[low, high]``."""
    from scipy.stats import ortho_group

    def _draw(rng, p, low=0.5, high=2.0):
        q = ortho_group.rvs(dim=p, random_state=rng)
        theta = (q * rng.uniform(low, high, size=p)) @ q.T
        return (theta + theta.T) / 2.0

    return _draw
