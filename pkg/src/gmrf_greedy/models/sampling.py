"""Reproducible zero-mean Gaussian sampling and second-moment estimates.

All randomness comes from numpy's counter-based ``Philox`` bit generator so a
seed fully determines a sample set, independent of thread scheduling.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from numpy.typing import NDArray

from gmrf_greedy._core.errors import DimensionMismatch, InvalidParameter, IOFailure
from gmrf_greedy.linalg.core import SymmetricMatrix, cholesky_factor, symmetrize

logger = logging.getLogger(__name__)

GENERATOR_NAME = "numpy.Philox/standard_normal/v1"


def make_rng(seed: int) -> np.random.Generator:
    """The toolkit's single random generator family."""
    return np.random.Generator(np.random.Philox(int(seed)))


def trial_seed(base_seed: int, trial_index: int) -> int:
    """Per-trial stream seed ``base_seed XOR trial_index``."""
    return int(base_seed) ^ int(trial_index)


@dataclass(frozen=True)
class SampleSet:
    """``n`` rows of ``p`` reals.

    ``population`` marks pseudo-samples whose second moment equals a
    population covariance exactly (``seed`` is then ``None``).
    """

    data: NDArray[np.float64]
    seed: int | None = None
    population: bool = False

    def __post_init__(self) -> None:
        arr = np.array(self.data, dtype=float)
        if arr.ndim != 2:
            raise DimensionMismatch(f"samples must be a 2-D array, got shape {arr.shape}")
        if arr.shape[0] < 1:
            raise InvalidParameter("a sample set needs at least one row")
        if not np.all(np.isfinite(arr)):
            raise InvalidParameter("samples contain non-finite values")
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @property
    def n(self) -> int:
        return self.data.shape[0]

    @property
    def p(self) -> int:
        return self.data.shape[1]

    def column(self, t: int) -> NDArray[np.float64]:
        return self.data[:, t]

    def rows(self, index: NDArray | slice) -> SampleSet:
        """Subset of rows (used for cross-validation folds)."""
        return SampleSet(self.data[index], seed=self.seed, population=False)


def sample_gaussian(sigma: SymmetricMatrix, n: int, seed: int) -> SampleSet:
    """``n`` iid draws ``x = L z`` with ``L = chol(Sigma)`` and standard normal ``z``.

    Raises:
        NotPositiveDefinite: If ``Sigma`` is not positive definite.

    """
    if n < 1:
        raise InvalidParameter(f"n must be >= 1, got {n}")
    lower = cholesky_factor(sigma)
    z = make_rng(seed).standard_normal((n, lower.shape[0]))
    return SampleSet(z @ lower.T, seed=int(seed))


def population_samples(sigma: SymmetricMatrix) -> SampleSet:
    """Pseudo-samples whose second moment is exactly ``Sigma``.

    Rows are ``sqrt(p) * L^T`` for ``Sigma = L L^T``, so with ``n = p`` rows
    ``X^T X / n = L L^T``. Estimators see the ``n -> infinity`` limit.
    """
    lower = cholesky_factor(sigma)
    p = lower.shape[0]
    return SampleSet(math.sqrt(p) * lower.T, seed=None, population=True)


def sample_covariance(samples: SampleSet) -> SymmetricMatrix:
    """``(1/n) sum_k x_k x_k^T`` without mean subtraction (the model is zero-mean)."""
    x = samples.data
    return symmetrize(x.T @ x / x.shape[0])


def load_samples_csv(path: Path) -> SampleSet:
    """Read an ``n x p`` sample matrix (CSV, no header)."""
    try:
        data = np.loadtxt(path, delimiter=",", dtype=float, ndmin=2)
    except (OSError, ValueError) as err:
        raise IOFailure(f"Cannot read samples from {path}: {err}") from err
    logger.debug("Loaded %d samples of dimension %d from %s", data.shape[0], data.shape[1], path)
    return SampleSet(data)


def save_samples_csv(samples: SampleSet, path: Path) -> Path:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        np.savetxt(path, samples.data, delimiter=",", fmt="%.17g")
    except OSError as err:
        raise IOFailure(f"Cannot write samples to {path}: {err}") from err
    return path
