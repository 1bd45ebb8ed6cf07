"""Resolve command inputs into a second-moment matrix and optional samples."""

from __future__ import annotations

from pathlib import Path

from gmrf_greedy._core.errors import InvalidParameter
from gmrf_greedy.linalg.core import SymmetricMatrix
from gmrf_greedy.linalg.io import load_matrix_csv
from gmrf_greedy.models.sampling import SampleSet, load_samples_csv, population_samples, sample_covariance


def load_inputs(sigma: Path | None, data: Path | None) -> tuple[SymmetricMatrix, SampleSet]:
    """Exactly one of ``sigma`` (a covariance CSV) or ``data`` (an ``n x p`` sample CSV).

    A covariance is turned into population pseudo-samples so that
    regression-based estimators can consume it too.
    """
    if (sigma is None) == (data is None):
        raise InvalidParameter("pass exactly one of --sigma or --data")
    if sigma is not None:
        sigma_hat = load_matrix_csv(sigma)
        return sigma_hat, population_samples(sigma_hat)
    samples = load_samples_csv(data)
    return sample_covariance(samples), samples
