"""K-fold cross-validation of the penalty constant ``c`` in ``lambda = c * sqrt(log p / n)``."""

from __future__ import annotations

import enum
import logging
from collections.abc import Sequence

import numpy as np

from gmrf_greedy._core.errors import InvalidParameter, NumericalError
from gmrf_greedy.baselines.config import LassoConfig
from gmrf_greedy.baselines.glasso import fit_glasso
from gmrf_greedy.baselines.lasso import fit_lasso_cd
from gmrf_greedy.linalg.core import log_det_pd
from gmrf_greedy.models.sampling import SampleSet, sample_covariance

logger = logging.getLogger(__name__)

DEFAULT_FOLDS = 5
DEFAULT_C_GRID = tuple(round(0.1 * k, 1) for k in range(1, 31))


class CVMethod(enum.StrEnum):
    glasso = "glasso"
    nbd = "nbd"


def contiguous_folds(n: int, k: int) -> list[np.ndarray]:
    """Row indices of ``k`` contiguous folds of near-equal size."""
    return np.array_split(np.arange(n), k)


def _held_out_loss(train: SampleSet, test: SampleSet, c: float, method: CVMethod, base: LassoConfig) -> float:
    cfg = LassoConfig.scaled(c, train.p, train.n, tol=base.tol, max_iter=base.max_iter)
    if method is CVMethod.glasso:
        theta = fit_glasso(sample_covariance(train), cfg)
        s_test = sample_covariance(test)
        return float(np.sum(theta * s_test)) - log_det_pd(theta)
    total = 0.0
    for r in range(train.p):
        coef = fit_lasso_cd(train, r, cfg)
        residual = test.column(r) - test.data @ coef
        total += float(residual @ residual) / test.n
    return total


def cv_scores(
    samples: SampleSet,
    k: int,
    grid: Sequence[float],
    method: CVMethod | str,
    base: LassoConfig | None = None,
) -> dict[float, float]:
    """Average held-out loss for every distinct ``c`` in ``grid``.

    Held-out loss is the Gaussian negative log-likelihood for ``glasso`` and
    the squared prediction error summed over nodes for ``nbd``. A fit that
    fails numerically scores ``inf``.
    """
    method = CVMethod(method)
    if k < 2:
        raise InvalidParameter(f"cross-validation needs k >= 2 folds, got {k}")
    if not grid:
        raise InvalidParameter("the c grid is empty")
    if any(c < 0 for c in grid):
        raise InvalidParameter("grid values must be non-negative")
    if samples.n < k:
        raise InvalidParameter(f"cannot split {samples.n} samples into {k} folds")
    base = base or LassoConfig(lam=0.0)

    folds = contiguous_folds(samples.n, k)
    scores = {}
    for c in sorted(set(float(c) for c in grid)):
        losses = []
        for fold in folds:
            mask = np.ones(samples.n, dtype=bool)
            mask[fold] = False
            try:
                losses.append(_held_out_loss(samples.rows(mask), samples.rows(fold), c, method, base))
            except NumericalError as err:
                logger.warning("CV fit with c=%g failed: %s", c, err)
                losses.append(np.inf)
        scores[c] = float(np.mean(losses))
        logger.debug("CV %s c=%g: held-out loss %.6f", method, c, scores[c])
    return scores


def select_lambda_cv(
    samples: SampleSet,
    k: int = DEFAULT_FOLDS,
    grid: Sequence[float] = DEFAULT_C_GRID,
    method: CVMethod | str = CVMethod.glasso,
    base: LassoConfig | None = None,
) -> float:
    """The grid constant ``c`` with the smallest average held-out loss; ties go to the smallest ``c``."""
    scores = cv_scores(samples, k, grid, method, base)
    best_c, best_score = None, np.inf
    for c, score in scores.items():
        if best_c is None or score < best_score:
            best_c, best_score = c, score
    logger.info("CV selected c=%g (held-out loss %.6f)", best_c, best_score)
    return best_c
