"""Dense symmetric linear algebra for precision-matrix estimation.

Matrices are plain ``numpy`` float arrays. A ``SymmetricMatrix`` is any square
array with ``M[i, j] == M[j, i]``; functions that build one symmetrize
explicitly so the property holds exactly.
"""

from __future__ import annotations

import numpy as np
from numpy.typing import NDArray
from scipy.linalg import LinAlgError, cho_solve, cholesky

from gmrf_greedy._core.errors import DimensionMismatch, NotPositiveDefinite, SingularUpdate

SymmetricMatrix = NDArray[np.float64]
CholeskyFactor = NDArray[np.float64]

PIVOT_RTOL = 1e-12
SM_DENOM_ATOL = 1e-12


def symmetrize(m: NDArray) -> SymmetricMatrix:
    """Return ``(M + M^T) / 2`` as a float array."""
    arr = np.asarray(m, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {arr.shape}")
    return (arr + arr.T) / 2.0


def cholesky_factor(m: SymmetricMatrix) -> CholeskyFactor:
    """Lower Cholesky factor ``L`` with ``L @ L.T == M``.

    A pivot is rejected when its square falls below ``1e-12`` times the
    largest diagonal entry of ``M``.

    Raises:
        NotPositiveDefinite: If ``M`` is not (numerically) positive definite.

    """
    arr = np.asarray(m, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {arr.shape}")
    try:
        lower = cholesky(arr, lower=True, check_finite=True)
    except (LinAlgError, ValueError) as err:
        raise NotPositiveDefinite(f"Cholesky factorization failed: {err}") from err
    scale = max(float(np.max(np.diag(arr))), 0.0)
    pivots = np.diag(lower) ** 2
    if scale <= 0.0 or np.min(pivots) <= PIVOT_RTOL * scale:
        raise NotPositiveDefinite(f"pivot {np.min(pivots):.3e} below {PIVOT_RTOL:g} x max diagonal {scale:.3e}")
    return lower


def log_det_pd(m: SymmetricMatrix) -> float:
    """``log det M`` computed as ``2 * sum(log L_ii)``."""
    lower = cholesky_factor(m)
    return 2.0 * float(np.sum(np.log(np.diag(lower))))


def invert_pd(m: SymmetricMatrix) -> SymmetricMatrix:
    """Inverse of a positive definite matrix via its Cholesky factor."""
    lower = cholesky_factor(m)
    inv = cho_solve((lower, True), np.eye(lower.shape[0]))
    return symmetrize(inv)


def is_positive_definite(m: SymmetricMatrix) -> bool:
    try:
        cholesky_factor(m)
    except NotPositiveDefinite:
        return False
    return True


def pd_interval_for_pair(w: SymmetricMatrix, i: int, j: int) -> tuple[float, float]:
    """Open interval of ``alpha`` around 0 keeping ``Theta + alpha (e_ij + e_ji)`` positive definite.

    ``w`` is ``Theta^{-1}``. The determinant ratio of the update is
    ``(1 + alpha W_ij)^2 - alpha^2 W_ii W_jj``, whose roots bound the interval.
    """
    root = np.sqrt(w[i, i] * w[j, j])
    return -1.0 / (root + w[i, j]), 1.0 / (root - w[i, j])


def pair_determinant_ratio(w: SymmetricMatrix, i: int, j: int, alpha: float) -> float:
    """``det(Theta + alpha (e_ij + e_ji)) / det(Theta)`` given ``w = Theta^{-1}``."""
    return (1.0 + alpha * w[i, j]) ** 2 - alpha**2 * w[i, i] * w[j, j]


def _rank_one(w: SymmetricMatrix, x: NDArray, coef: float) -> SymmetricMatrix:
    """Sherman-Morrison: inverse of ``A + coef x x^T`` given ``w = A^{-1}``."""
    wx = w @ x
    denom = 1.0 + coef * float(x @ wx)
    if abs(denom) < SM_DENOM_ATOL:
        raise SingularUpdate(f"Sherman-Morrison denominator {denom:.3e} vanishes")
    return w - (coef / denom) * np.outer(wx, wx)


def pair_update_inverse(w: SymmetricMatrix, i: int, j: int, alpha: float) -> SymmetricMatrix:
    """Inverse of ``Theta + alpha (e_ij + e_ji)`` from ``w = Theta^{-1}``.

    The update is split as ``(alpha/2)(u u^T - v v^T)`` with ``u = e_i + e_j``
    and ``v = e_i - e_j`` and applied as two rank-1 corrections, the
    positive-coefficient term first so the intermediate stays positive definite.

    Raises:
        SingularUpdate: If ``alpha`` sits on the boundary of the PD interval.

    """
    if alpha == 0.0:
        return np.array(w, dtype=float, copy=True)
    p = w.shape[0]
    u = np.zeros(p)
    v = np.zeros(p)
    u[i] = u[j] = 1.0
    v[i], v[j] = 1.0, -1.0
    half = alpha / 2.0
    if half > 0:
        out = _rank_one(w, u, half)
        out = _rank_one(out, v, -half)
    else:
        out = _rank_one(w, v, -half)
        out = _rank_one(out, u, half)
    return symmetrize(out)


def diagonal_update_inverse(w: SymmetricMatrix, i: int, beta: float) -> SymmetricMatrix:
    """Inverse of ``Theta + beta e_i e_i^T`` from ``w = Theta^{-1}``."""
    if beta == 0.0:
        return np.array(w, dtype=float, copy=True)
    x = np.zeros(w.shape[0])
    x[i] = 1.0
    return symmetrize(_rank_one(w, x, beta))


def sup_norm_deviation(a: NDArray, b: NDArray) -> float:
    """Largest absolute entrywise difference ``max_ij |A_ij - B_ij|``."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes differ: {a.shape} vs {b.shape}")
    return float(np.max(np.abs(a - b))) if a.size else 0.0
