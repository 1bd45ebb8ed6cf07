"""Synthetic covariance and precision families with known graphs.

Chain, star and diamond are parameterized in covariance space by a
correlation ``tau``; the grid is built directly in precision space from an
edge weight ``omega`` on a 4-nearest-neighbor lattice.
"""

from __future__ import annotations

import math

import numpy as np

from gmrf_greedy._core.errors import InvalidParameter, NotPositiveDefinite
from gmrf_greedy.linalg.core import SymmetricMatrix, cholesky_factor, symmetrize

DIAMOND_TAU_MAX = 1.0 / math.sqrt(2.0)
GRID_OMEGA_MAX = 0.25


def _check_tau(tau: float, bound: float = 1.0) -> None:
    if not abs(tau) < bound:
        raise InvalidParameter(f"|tau| must be < {bound:.6g}, got {tau}")


def _ensure_pd(sigma: SymmetricMatrix, what: str) -> SymmetricMatrix:
    try:
        cholesky_factor(sigma)
    except NotPositiveDefinite as err:
        raise InvalidParameter(f"{what} is not positive definite: {err}") from err
    return sigma


def make_chain_cov(p: int, tau: float) -> SymmetricMatrix:
    """``Sigma_ij = tau^|i-j|``; the inverse is tridiagonal."""
    if p < 2:
        raise InvalidParameter(f"chain needs p >= 2, got {p}")
    _check_tau(tau)
    lags = np.abs(np.subtract.outer(np.arange(p), np.arange(p)))
    sigma = np.power(float(tau), lags.astype(float))
    return _ensure_pd(symmetrize(sigma), "chain covariance")


def make_star_cov(p: int, tau: float) -> SymmetricMatrix:
    """Star with hub 0: ``tau`` on hub edges, ``tau^2`` between leaves."""
    if p < 3:
        raise InvalidParameter(f"star needs p >= 3, got {p}")
    _check_tau(tau)
    sigma = np.full((p, p), tau * tau)
    sigma[0, :] = tau
    sigma[:, 0] = tau
    np.fill_diagonal(sigma, 1.0)
    return _ensure_pd(symmetrize(sigma), "star covariance")


def make_star_forest_cov(p: int, d: int, tau: float) -> SymmetricMatrix:
    """Disjoint stars of hub degree at most ``d`` covering ``p`` nodes.

    Uses ``ceil(p / (d + 1))`` hubs and deals the nodes into consecutive
    blocks whose sizes differ by at most one. Hub degrees are therefore equal
    up to one, and all equal ``d`` when ``d + 1`` divides ``p``. The first node
    of each block is its hub.
    """
    if d < 1 or d > p - 1:
        raise InvalidParameter(f"star degree must lie in 1..{p - 1}, got {d}")
    _check_tau(tau)
    hubs = math.ceil(p / (d + 1))
    sigma = np.eye(p)
    for block_nodes in np.array_split(np.arange(p), hubs):
        start, size = int(block_nodes[0]), len(block_nodes)
        if size == 1:
            continue
        block = np.full((size, size), tau * tau)
        block[0, :] = tau
        block[:, 0] = tau
        np.fill_diagonal(block, 1.0)
        sigma[start : start + size, start : start + size] = block
    return _ensure_pd(symmetrize(sigma), "star-forest covariance")


def make_diamond_cov(tau: float) -> SymmetricMatrix:
    """4-node diamond: ``tau`` everywhere off-diagonal except ``Sigma_12 = 0``, ``Sigma_03 = 2 tau^2``.

    Node 0 and node 3 are the two non-adjacent tips; nodes 1 and 2 the other pair.
    """
    _check_tau(tau, DIAMOND_TAU_MAX)
    sigma = np.full((4, 4), float(tau))
    np.fill_diagonal(sigma, 1.0)
    sigma[1, 2] = sigma[2, 1] = 0.0
    sigma[0, 3] = sigma[3, 0] = 2.0 * tau * tau
    return _ensure_pd(sigma, "diamond covariance")


def grid_edges(side: int) -> list[tuple[int, int]]:
    """4-nearest-neighbor lattice edges, nodes numbered row-major."""
    pairs = []
    for row in range(side):
        for col in range(side):
            node = row * side + col
            if col + 1 < side:
                pairs.append((node, node + 1))
            if row + 1 < side:
                pairs.append((node, node + side))
    return sorted(pairs)


def make_grid_precision(side: int, omega: float) -> SymmetricMatrix:
    """Precision with unit diagonal and ``omega`` on lattice edges.

    ``|omega| < 0.25`` makes it strictly diagonally dominant for degree <= 4.
    """
    if side < 2:
        raise InvalidParameter(f"grid side must be >= 2, got {side}")
    if not abs(omega) < GRID_OMEGA_MAX:
        raise InvalidParameter(f"|omega| must be < {GRID_OMEGA_MAX}, got {omega}")
    theta = np.eye(side * side)
    for i, j in grid_edges(side):
        theta[i, j] = theta[j, i] = omega
    return theta


def grid_side(p: int) -> int:
    side = math.isqrt(p)
    if side * side != p:
        raise InvalidParameter(f"grid requires p to be a perfect square, got {p}")
    return side
