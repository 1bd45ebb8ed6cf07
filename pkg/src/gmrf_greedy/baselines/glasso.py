"""l1-penalized Gaussian maximum likelihood by proximal gradient descent.

Minimizes ``tr(Theta S) - log det Theta + lam * sum_{i != j} |Theta_ij|``.
Each iteration takes a Barzilai-Borwein step on the smooth part,
soft-thresholds the off-diagonal entries and backtracks until the
candidate is positive definite and decreases the objective sufficiently.
Convergence is declared on the duality gap.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from gmrf_greedy._core.decorators import timing
from gmrf_greedy._core.errors import DimensionMismatch, InvalidParameter, NonConvergence, NotPositiveDefinite
from gmrf_greedy.baselines.config import ZERO_TOL, LassoConfig
from gmrf_greedy.linalg.core import SymmetricMatrix, cholesky_factor, invert_pd, log_det_pd, symmetrize

logger = logging.getLogger(__name__)

MIN_STEP = 1e-12
MAX_STEP = 1e4
ARMIJO = 1e-4


@dataclass
class GlassoResult:
    theta: SymmetricMatrix
    objective: float
    gap: float
    iterations: int
    objective_trace: list[float] = field(default_factory=list)


def soft_threshold_offdiag(a: SymmetricMatrix, threshold: float) -> SymmetricMatrix:
    """Soft-threshold off-diagonal entries by ``threshold``; the diagonal is left alone."""
    out = np.sign(a) * np.maximum(np.abs(a) - threshold, 0.0)
    np.fill_diagonal(out, np.diag(a))
    return out


def offdiag_l1(a: SymmetricMatrix) -> float:
    return float(np.sum(np.abs(a)) - np.sum(np.abs(np.diag(a))))


def glasso_objective(theta: SymmetricMatrix, sigma_hat: SymmetricMatrix, lam: float) -> float:
    return float(np.sum(theta * sigma_hat)) - log_det_pd(theta) + lam * offdiag_l1(theta)


def duality_gap(
    theta: SymmetricMatrix, w: SymmetricMatrix, sigma_hat: SymmetricMatrix, lam: float, objective: float
) -> float:
    """Primal objective minus the dual value at ``U = S + clip(W - S, -lam, lam)`` (``inf`` if ``U`` is not PD)."""
    dual_point = sigma_hat + np.clip(w - sigma_hat, -lam, lam)
    np.fill_diagonal(dual_point, np.diag(sigma_hat))
    try:
        dual = log_det_pd(symmetrize(dual_point)) + theta.shape[0]
    except NotPositiveDefinite:
        return np.inf
    return objective - dual


def _smooth(theta: SymmetricMatrix, sigma_hat: SymmetricMatrix) -> tuple[float, SymmetricMatrix] | None:
    """Smooth loss and inverse at ``theta``, or ``None`` outside the PD cone."""
    try:
        lower = cholesky_factor(theta)
    except NotPositiveDefinite:
        return None
    loss = float(np.sum(theta * sigma_hat)) - 2.0 * float(np.sum(np.log(np.diag(lower))))
    return loss, invert_pd(theta)


@timing
def solve_glasso(sigma_hat: SymmetricMatrix, cfg: LassoConfig) -> GlassoResult:
    """Run the proximal gradient solver and return the iterate with its diagnostics.

    Raises:
        NonConvergence: If the duality gap is not below ``cfg.tol`` after ``cfg.max_iter`` iterations.

    """
    sigma_hat = np.asarray(sigma_hat, dtype=float)
    if sigma_hat.ndim != 2 or sigma_hat.shape[0] != sigma_hat.shape[1]:
        raise DimensionMismatch(f"Sigma_hat must be square, got shape {sigma_hat.shape}")
    if np.any(np.diag(sigma_hat) <= 0):
        raise InvalidParameter("Sigma_hat must have a positive diagonal")
    lam = cfg.lam

    theta = np.diag(1.0 / np.diag(sigma_hat))
    loss, w = _smooth(theta, sigma_hat)
    objective = loss + lam * offdiag_l1(theta)
    trace = [objective]
    step = 1.0

    for iteration in range(cfg.max_iter + 1):
        gap = duality_gap(theta, w, sigma_hat, lam, objective)
        if gap <= cfg.tol:
            logger.debug("Glasso converged in %d iteration(s), gap %.3e", iteration, gap)
            theta = np.where(np.abs(theta) < ZERO_TOL, 0.0, theta)
            return GlassoResult(theta, objective, gap, iteration, trace)
        if iteration == cfg.max_iter:
            break

        grad = sigma_hat - w
        while True:
            candidate = symmetrize(soft_threshold_offdiag(theta - step * grad, step * lam))
            delta = candidate - theta
            evaluated = _smooth(candidate, sigma_hat)
            if evaluated is not None:
                new_loss, new_w = evaluated
                new_objective = new_loss + lam * offdiag_l1(candidate)
                model = loss + float(np.sum(grad * delta)) + float(np.sum(delta * delta)) / (2.0 * step)
                decrease_ok = new_objective <= objective - ARMIJO * float(np.sum(delta * delta)) / step
                if (new_loss <= model and new_objective <= objective) or decrease_ok:
                    break
            step /= 2.0
            if step < MIN_STEP:
                raise NonConvergence(f"glasso line search stalled at iteration {iteration}")

        grad_change = w - new_w
        curvature = float(np.sum(delta * grad_change))
        theta, w, loss, objective = candidate, new_w, new_loss, new_objective
        trace.append(objective)
        if curvature > 0:
            step = min(max(float(np.sum(delta * delta)) / curvature, MIN_STEP), MAX_STEP)

    raise NonConvergence(f"glasso did not reach gap {cfg.tol:g} in {cfg.max_iter} iterations (gap {gap:.3e})")


def fit_glasso(sigma_hat: SymmetricMatrix, cfg: LassoConfig) -> SymmetricMatrix:
    """Penalized precision estimate; off-diagonal magnitudes below ``1e-8`` are set to zero."""
    return solve_glasso(sigma_hat, cfg).theta
