"""Nodewise l1-penalized regression (neighborhood lasso)."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from numpy.typing import NDArray

from gmrf_greedy._core.decorators import timing
from gmrf_greedy._core.errors import InvalidParameter, NonConvergence
from gmrf_greedy.baselines.config import ZERO_TOL, LassoConfig
from gmrf_greedy.greedy.neighborhood import CombineRule, GraphEstimate, graph_from_neighborhoods
from gmrf_greedy.models.sampling import SampleSet

logger = logging.getLogger(__name__)

ZERO_COLUMN_ATOL = 1e-14


def soft_threshold(z: float, threshold: float) -> float:
    """``sign(z) * max(|z| - threshold, 0)``."""
    if z > threshold:
        return z - threshold
    if z < -threshold:
        return z + threshold
    return 0.0


def _lasso_gram(gram: NDArray, target: NDArray, r: int, cfg: LassoConfig) -> NDArray[np.float64]:
    """Cyclic coordinate descent on the moments ``gram = X^T X / n`` and ``target = X^T y / n``."""
    p = gram.shape[0]
    coef = np.zeros(p)
    fitted = np.zeros(p)  # gram @ coef
    coords = [t for t in range(p) if t != r and gram[t, t] >= ZERO_COLUMN_ATOL]
    for sweep in range(1, cfg.max_iter + 1):
        max_change = 0.0
        for t in coords:
            old = coef[t]
            z = target[t] - fitted[t] + gram[t, t] * old
            new = soft_threshold(z, cfg.lam) / gram[t, t]
            if new != old:
                fitted += gram[:, t] * (new - old)
                coef[t] = new
                max_change = max(max_change, abs(new - old))
        if max_change <= cfg.tol:
            logger.debug("Lasso for node %d converged after %d sweep(s)", r, sweep)
            return coef
    raise NonConvergence(f"lasso for node {r} did not converge in {cfg.max_iter} sweeps")


def fit_lasso_cd(samples: SampleSet, r: int, cfg: LassoConfig) -> NDArray[np.float64]:
    """Minimize ``(1/2n) ||x_r - X Gamma||^2 + lam ||Gamma||_1`` over ``Gamma`` with ``Gamma_r = 0``.

    Returns a length-``p`` coefficient vector whose entry ``r`` is zero.

    Raises:
        NonConvergence: If the largest coordinate change stays above ``cfg.tol``.

    """
    if not 0 <= r < samples.p:
        raise InvalidParameter(f"node {r} outside 0..{samples.p - 1}")
    x = samples.data
    gram = x.T @ x / samples.n
    return _lasso_gram(gram, gram[:, r].copy(), r, cfg)


@timing
def fit_nbd_lasso(
    samples: SampleSet,
    cfg: LassoConfig,
    rule: CombineRule | str = CombineRule.AND,
    workers: int = 1,
) -> GraphEstimate:
    """Neighborhood lasso at every node; ``|Gamma_t| > 1e-8`` marks a neighbor."""
    x = samples.data
    gram = x.T @ x / samples.n

    def node_neighbors(r: int) -> frozenset[int]:
        coef = _lasso_gram(gram, gram[:, r].copy(), r, cfg)
        return frozenset(np.flatnonzero(np.abs(coef) > ZERO_TOL).tolist())

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            hoods = list(pool.map(node_neighbors, range(samples.p)))
    else:
        hoods = [node_neighbors(r) for r in range(samples.p)]
    return graph_from_neighborhoods(hoods, rule)
