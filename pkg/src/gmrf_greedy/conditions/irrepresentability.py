"""Irrepresentability values of the l1 methods and restricted eigenvalue constants."""

from __future__ import annotations

import itertools
import logging
import math

import numpy as np
from scipy.linalg import solve

from gmrf_greedy._core.errors import CombinatorialBlowup, DimensionMismatch, DimensionTooLarge, InvalidParameter
from gmrf_greedy.linalg.core import SymmetricMatrix, cholesky_factor
from gmrf_greedy.models.edges import EdgeSet

logger = logging.getLogger(__name__)

KRONECKER_MAX_P = 40
SUBSET_LIMIT = 100_000
_EIG_BATCH = 4096


def _check(sigma: SymmetricMatrix, edges: EdgeSet | None = None) -> SymmetricMatrix:
    sigma = np.asarray(sigma, dtype=float)
    if sigma.ndim != 2 or sigma.shape[0] != sigma.shape[1]:
        raise DimensionMismatch(f"Sigma must be square, got shape {sigma.shape}")
    if edges is not None and edges.p != sigma.shape[0]:
        raise DimensionMismatch(f"edge set is over {edges.p} nodes, Sigma is {sigma.shape[0]}x{sigma.shape[0]}")
    cholesky_factor(sigma)
    return sigma


def glasso_irrepresentability(sigma: SymmetricMatrix, edges: EdgeSet) -> float:
    """``max_{e in S^c} || Gamma_{e S} Gamma_{S S}^{-1} ||_1`` with ``Gamma = Sigma kron Sigma``.

    Rows and columns of ``Gamma`` are ordered pairs ``(i, j)`` at index
    ``i * p + j`` so ``Gamma[(i, j), (k, l)] = Sigma_ik Sigma_jl``. ``S``
    holds the diagonal pairs ``(i, i)`` and both orientations of every edge.
    The l1 graphical estimator is sparsistent only when the value is below 1.

    Raises:
        DimensionTooLarge: If ``p > 40``.

    """
    sigma = _check(sigma, edges)
    p = sigma.shape[0]
    if p > KRONECKER_MAX_P:
        raise DimensionTooLarge(f"Kronecker construction needs p <= {KRONECKER_MAX_P}, got {p}")
    in_support = np.zeros(p * p, dtype=bool)
    in_support[np.arange(p) * (p + 1)] = True
    for i, j in edges:
        in_support[i * p + j] = in_support[j * p + i] = True
    if in_support.all():
        return 0.0
    gamma = np.kron(sigma, sigma)
    support = np.flatnonzero(in_support)
    off = np.flatnonzero(~in_support)
    coupling = solve(gamma[np.ix_(support, support)], gamma[np.ix_(support, off)], assume_a="pos").T
    return float(np.max(np.sum(np.abs(coupling), axis=1)))


def nbd_irrepresentability(sigma: SymmetricMatrix, edges: EdgeSet) -> float:
    """``max_r || Sigma_{N^c N} Sigma_{N N}^{-1} ||_inf`` with ``N`` the neighbors of ``r``.

    ``N^c`` excludes ``r`` itself. Nodes with no neighbors or no
    non-neighbors contribute 0.
    """
    sigma = _check(sigma, edges)
    p = sigma.shape[0]
    worst = 0.0
    for r in range(p):
        hood = sorted(edges.neighbors(r))
        rest = [t for t in range(p) if t != r and t not in edges.neighbors(r)]
        if not hood or not rest:
            continue
        coupling = solve(sigma[np.ix_(hood, hood)], sigma[np.ix_(hood, rest)], assume_a="pos").T
        worst = max(worst, float(np.max(np.sum(np.abs(coupling), axis=1))))
    return worst


def restricted_extreme_eigs(sigma: SymmetricMatrix, k: int) -> tuple[float, float]:
    """Smallest and largest eigenvalue over all ``k x k`` principal submatrices.

    Returns ``(cmin_hat, rho_hat)`` with ``rho_hat = max eigenvalue / cmin_hat``.

    Raises:
        CombinatorialBlowup: If there are more than ``1e5`` subsets.

    """
    sigma = np.asarray(sigma, dtype=float)
    if sigma.ndim != 2 or sigma.shape[0] != sigma.shape[1]:
        raise DimensionMismatch(f"Sigma must be square, got shape {sigma.shape}")
    p = sigma.shape[0]
    if not 1 <= k <= p:
        raise InvalidParameter(f"k must lie in 1..{p}, got {k}")
    count = math.comb(p, k)
    if count > SUBSET_LIMIT:
        raise CombinatorialBlowup(f"C({p}, {k}) = {count} subsets exceeds the limit of {SUBSET_LIMIT}")

    lowest, highest = np.inf, -np.inf
    subsets = itertools.combinations(range(p), k)
    while batch := list(itertools.islice(subsets, _EIG_BATCH)):
        index = np.array(batch)
        blocks = sigma[index[:, :, None], index[:, None, :]]
        eigs = np.linalg.eigvalsh(blocks)
        lowest = min(lowest, float(eigs[:, 0].min()))
        highest = max(highest, float(eigs[:, -1].max()))
    logger.debug("Restricted eigenvalues over %d subsets of size %d: [%.6f, %.6f]", count, k, lowest, highest)
    if lowest <= 0:
        return lowest, np.inf
    return lowest, highest / lowest
