"""l1-regularized comparison methods: graphical lasso and neighborhood lasso."""

from __future__ import annotations

from gmrf_greedy.baselines.config import ZERO_TOL, LambdaRule, LassoConfig, scaled_lambda
from gmrf_greedy.baselines.cv import DEFAULT_C_GRID, DEFAULT_FOLDS, CVMethod, contiguous_folds, cv_scores, select_lambda_cv
from gmrf_greedy.baselines.glasso import (
    GlassoResult,
    duality_gap,
    fit_glasso,
    glasso_objective,
    soft_threshold_offdiag,
    solve_glasso,
)
from gmrf_greedy.baselines.lasso import fit_lasso_cd, fit_nbd_lasso, soft_threshold

__all__ = [
    "DEFAULT_C_GRID",
    "DEFAULT_FOLDS",
    "ZERO_TOL",
    "CVMethod",
    "GlassoResult",
    "LambdaRule",
    "LassoConfig",
    "contiguous_folds",
    "cv_scores",
    "duality_gap",
    "fit_glasso",
    "fit_lasso_cd",
    "fit_nbd_lasso",
    "glasso_objective",
    "scaled_lambda",
    "select_lambda_cv",
    "soft_threshold",
    "soft_threshold_offdiag",
    "solve_glasso",
]
