"""Greedy forward-backward structure learning for sparse Gaussian graphical models."""

from __future__ import annotations

__version__ = "0.1.0"

# Re-export the main estimators for convenience
from gmrf_greedy._core import (
    AppConfig,
    GmrfError,
    InvalidInputError,
    NumericalError,
    setup_logging,
    timing,
)
from gmrf_greedy.baselines import LassoConfig, fit_glasso, fit_nbd_lasso
from gmrf_greedy.greedy import GreedyConfig, fit_global_greedy, fit_nbd_greedy
from gmrf_greedy.models import EdgeSet, ModelSpec, population_samples, sample_gaussian

__all__ = [
    "AppConfig",
    "EdgeSet",
    "GmrfError",
    "GreedyConfig",
    "InvalidInputError",
    "LassoConfig",
    "ModelSpec",
    "NumericalError",
    "__version__",
    "fit_glasso",
    "fit_global_greedy",
    "fit_nbd_greedy",
    "fit_nbd_lasso",
    "population_samples",
    "sample_gaussian",
    "setup_logging",
    "timing",
]
