"""Global forward-backward greedy estimation of a sparse precision matrix.

Minimizes the Gaussian loss ``L(Theta) = tr(Theta Sigma_hat) - log det Theta``
over positive definite ``Theta`` whose off-diagonal support is grown one pair
at a time. Every single-entry move is evaluated in closed form from the
maintained inverse ``W = Theta^{-1}`` through the determinant identity

    det(Theta + a (e_ij + e_ji)) = det(Theta) * ((1 + a W_ij)^2 - a^2 W_ii W_jj)

so no log-determinant is recomputed inside scans or refits.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import Executor, ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray
from scipy.optimize import brentq

from gmrf_greedy._core.decorators import timing
from gmrf_greedy._core.errors import (
    DimensionMismatch,
    Diverged,
    EmptySupport,
    InvalidParameter,
    NoCandidates,
    NonConvergence,
    NotPositiveDefinite,
)
from gmrf_greedy.greedy.config import GreedyConfig
from gmrf_greedy.linalg.core import (
    SymmetricMatrix,
    diagonal_update_inverse,
    invert_pd,
    log_det_pd,
    pair_update_inverse,
    pd_interval_for_pair,
)
from gmrf_greedy.models.edges import EdgeSet, Pair

logger = logging.getLogger(__name__)


def gaussian_loss(theta: SymmetricMatrix, sigma_hat: SymmetricMatrix) -> float:
    """``tr(Theta Sigma_hat) - log det Theta``.

    Raises:
        NotPositiveDefinite: If ``Theta`` is not positive definite.

    """
    theta = np.asarray(theta, dtype=float)
    sigma_hat = np.asarray(sigma_hat, dtype=float)
    if theta.shape != sigma_hat.shape:
        raise DimensionMismatch(f"Theta is {theta.shape}, Sigma_hat is {sigma_hat.shape}")
    return float(np.sum(theta * sigma_hat)) - log_det_pd(theta)


# ---------------------------------------------------------------------------
# Single-entry kernel
# ---------------------------------------------------------------------------


def _pair_restriction(alpha, w_ij, w_ii, w_jj, s_ij):
    """``g(a) = 2 a S_ij - log((1 + a W_ij)^2 - a^2 W_ii W_jj)``; ``inf`` outside the PD interval."""
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        det = w_ii * w_jj - w_ij * w_ij
        ratio = 1.0 + 2.0 * alpha * w_ij - alpha * alpha * det
        value = 2.0 * alpha * s_ij - np.log(np.where(ratio > 0, ratio, 1.0))
    return np.where(ratio > 0, value, np.inf)


def _pair_restriction_slope(alpha: float, w_ij: float, w_ii: float, w_jj: float, s_ij: float) -> float:
    det = w_ii * w_jj - w_ij * w_ij
    ratio = 1.0 + 2.0 * alpha * w_ij - alpha * alpha * det
    return 2.0 * s_ij - (2.0 * w_ij - 2.0 * alpha * det) / ratio


def _bisect_pair_min(w_ij: float, w_ii: float, w_jj: float, s_ij: float) -> float:
    """Safeguarded root of ``g'`` inside the PD interval (``g'`` runs from -inf to +inf)."""
    root = math.sqrt(w_ii * w_jj)
    lo, hi = -1.0 / (root + w_ij), 1.0 / (root - w_ij)
    shrink = 1e-12 * (hi - lo)
    a, b = lo + shrink, hi - shrink
    args = (w_ij, w_ii, w_jj, s_ij)
    while _pair_restriction_slope(a, *args) > 0 and shrink > 0:
        shrink /= 10.0
        a = lo + shrink
    while _pair_restriction_slope(b, *args) < 0 and shrink > 0:
        shrink /= 10.0
        b = hi - shrink
    return brentq(_pair_restriction_slope, a, b, args=args, xtol=1e-15, rtol=4 * np.finfo(float).eps)


def pair_minimizers(
    w_ij: NDArray, w_ii: NDArray, w_jj: NDArray, s_ij: NDArray
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Vectorized exact minimizer ``alpha*`` and gain ``-g(alpha*)`` for many pairs.

    Solves the stationarity quadratic

        S_ij D a^2 - (D + 2 W_ij S_ij) a + (W_ij - S_ij) = 0,   D = W_ii W_jj - W_ij^2,

    with the cancellation-free root formulas and keeps the root inside the PD
    interval. Entries where neither root qualifies fall back to bisection on ``g'``.
    """
    w_ij, w_ii, w_jj, s_ij = (np.asarray(x, dtype=float) for x in (w_ij, w_ii, w_jj, s_ij))
    det = w_ii * w_jj - w_ij * w_ij
    a2 = s_ij * det
    a1 = -(det + 2.0 * w_ij * s_ij)
    a0 = w_ij - s_ij
    disc = np.maximum(a1 * a1 - 4.0 * a2 * a0, 0.0)
    q = -0.5 * (a1 + np.where(a1 >= 0, 1.0, -1.0) * np.sqrt(disc))
    with np.errstate(divide="ignore", invalid="ignore"):
        roots = np.stack([q / a2, a0 / q])
    values = _pair_restriction(np.nan_to_num(roots, nan=np.inf, posinf=np.inf, neginf=-np.inf), w_ij, w_ii, w_jj, s_ij)
    values = np.where(np.isfinite(roots), values, np.inf)
    pick = np.argmin(values, axis=0)
    alpha = np.take_along_axis(roots, pick[None, ...], axis=0)[0]
    best = np.take_along_axis(values, pick[None, ...], axis=0)[0]

    bad = ~np.isfinite(best)
    if np.any(bad):
        flat = np.flatnonzero(bad)
        for k in flat:
            idx = np.unravel_index(k, bad.shape)
            a = _bisect_pair_min(float(w_ij[idx]), float(w_ii[idx]), float(w_jj[idx]), float(s_ij[idx]))
            alpha[idx] = a
            best[idx] = _pair_restriction(a, w_ij[idx], w_ii[idx], w_jj[idx], s_ij[idx])
        logger.debug("Bisection fallback used for %d pair(s)", flat.size)
    return alpha, np.maximum(-best, 0.0)


def single_pair_min(w: SymmetricMatrix, sigma_hat: SymmetricMatrix, i: int, j: int) -> tuple[float, float]:
    """Exact minimizer of the loss along ``Theta + alpha (e_ij + e_ji)`` and the loss decrease.

    ``w`` is the current ``Theta^{-1}``. Returns ``(alpha*, gain)`` with
    ``gain = L(Theta) - L(Theta + alpha* (e_ij + e_ji)) >= 0``.
    """
    if i == j:
        raise InvalidParameter("single_pair_min needs an off-diagonal pair")
    alpha, gain = pair_minimizers(
        np.array([w[i, j]]), np.array([w[i, i]]), np.array([w[j, j]]), np.array([sigma_hat[i, j]])
    )
    return float(alpha[0]), float(gain[0])


# ---------------------------------------------------------------------------
# State
# ---------------------------------------------------------------------------


@dataclass
class PrecisionState:
    """Estimate ``Theta``, its maintained inverse ``W``, the active support and the loss.

    ``forward_gains`` holds one forward gain per pair currently in the support,
    in the order they were added; a backward removal pops the latest one.
    ``gain_history`` keeps every accepted forward gain. ``trace`` records
    ``(support size, loss)`` after every accepted step.
    """

    theta: SymmetricMatrix
    w: SymmetricMatrix
    support: EdgeSet
    loss: float
    forward_gains: list[float] = field(default_factory=list)
    gain_history: list[float] = field(default_factory=list)
    trace: list[tuple[int, float]] = field(default_factory=list)
    refactor_period: int = 50
    updates_since_refactor: int = 0

    @classmethod
    def identity(cls, sigma_hat: SymmetricMatrix, refactor_period: int = 50) -> PrecisionState:
        p = sigma_hat.shape[0]
        return cls(
            theta=np.eye(p),
            w=np.eye(p),
            support=EdgeSet(p),
            loss=float(np.trace(sigma_hat)),
            refactor_period=refactor_period,
        )

    @property
    def p(self) -> int:
        return self.theta.shape[0]

    def copy(self) -> PrecisionState:
        return PrecisionState(
            theta=self.theta.copy(),
            w=self.w.copy(),
            support=self.support,
            loss=self.loss,
            forward_gains=list(self.forward_gains),
            gain_history=list(self.gain_history),
            trace=list(self.trace),
            refactor_period=self.refactor_period,
            updates_since_refactor=self.updates_since_refactor,
        )

    def apply_pair(self, i: int, j: int, alpha: float, loss_change: float) -> None:
        """Add ``alpha`` to ``Theta_ij`` and ``Theta_ji`` and update ``W`` in place."""
        self.w = pair_update_inverse(self.w, i, j, alpha)
        self.theta[i, j] += alpha
        self.theta[j, i] = self.theta[i, j]
        self.loss += loss_change
        self._count_update()

    def apply_diagonal(self, i: int, beta: float, loss_change: float) -> None:
        self.w = diagonal_update_inverse(self.w, i, beta)
        self.theta[i, i] += beta
        self.loss += loss_change
        self._count_update()

    def _count_update(self) -> None:
        self.updates_since_refactor += 1
        if self.updates_since_refactor >= self.refactor_period:
            self.refactor()

    def refactor(self) -> None:
        """Recompute ``W`` by full inversion to discard accumulated update error."""
        try:
            self.w = invert_pd(self.theta)
        except NotPositiveDefinite as err:
            raise Diverged(f"estimate left the positive definite cone: {err}") from err
        self.updates_since_refactor = 0

    def recompute_loss(self, sigma_hat: SymmetricMatrix) -> float:
        try:
            self.loss = gaussian_loss(self.theta, sigma_hat)
        except NotPositiveDefinite as err:
            raise Diverged(f"estimate left the positive definite cone: {err}") from err
        return self.loss

    def inverse_residual(self) -> float:
        """``max |Theta W - I|``."""
        return float(np.max(np.abs(self.theta @ self.w - np.eye(self.p))))


# ---------------------------------------------------------------------------
# Scans
# ---------------------------------------------------------------------------


def _off_support_candidates(state: PrecisionState) -> tuple[NDArray[np.intp], NDArray[np.intp]]:
    """Upper-triangle pairs outside the support, in lexicographic order."""
    p = state.p
    rows, cols = np.triu_indices(p, k=1)
    if state.support.pairs:
        active = np.array(state.support.sorted())
        i, j = active[:, 0], active[:, 1]
        flat = i * (2 * p - i - 1) // 2 + (j - i - 1)
        keep = np.ones(rows.shape, dtype=bool)
        keep[flat] = False
        rows, cols = rows[keep], cols[keep]
    return rows, cols


def _best_in_chunk(
    w: SymmetricMatrix, sigma_hat: SymmetricMatrix, rows: NDArray, cols: NDArray
) -> tuple[int, float, float]:
    alpha, gain = pair_minimizers(w[rows, cols], w[rows, rows], w[cols, cols], sigma_hat[rows, cols])
    k = int(np.argmax(gain))
    return k, float(alpha[k]), float(gain[k])


def forward_scan(
    state: PrecisionState,
    sigma_hat: SymmetricMatrix,
    workers: int = 1,
    executor: Executor | None = None,
) -> tuple[Pair, float, float]:
    """Off-support pair with the largest loss decrease.

    Ties go to the lexicographically smallest pair. With ``workers > 1`` the
    candidate list is split into contiguous chunks scanned concurrently and
    reduced in chunk order, which reproduces the sequential choice exactly.

    Raises:
        NoCandidates: If every off-diagonal pair is already active.

    """
    rows, cols = _off_support_candidates(state)
    if rows.size == 0:
        raise NoCandidates("every off-diagonal pair is already in the support")

    if workers <= 1 or rows.size < 2 * workers:
        k, alpha, gain = _best_in_chunk(state.w, sigma_hat, rows, cols)
        return (int(rows[k]), int(cols[k])), alpha, gain

    bounds = np.linspace(0, rows.size, workers + 1).astype(int)
    chunks = [(bounds[c], bounds[c + 1]) for c in range(workers) if bounds[c] < bounds[c + 1]]
    own_pool = executor is None
    pool = executor or ThreadPoolExecutor(max_workers=workers)
    try:
        futures = [pool.submit(_best_in_chunk, state.w, sigma_hat, rows[a:b], cols[a:b]) for a, b in chunks]
        results = [f.result() for f in futures]
    finally:
        if own_pool:
            pool.shutdown()

    best_pair, best_alpha, best_gain = None, 0.0, -np.inf
    for (start, _), (k, alpha, gain) in zip(chunks, results, strict=True):
        if gain > best_gain:
            best_pair = (int(rows[start + k]), int(cols[start + k]))
            best_alpha, best_gain = alpha, gain
    return best_pair, best_alpha, best_gain


def removal_costs(state: PrecisionState, sigma_hat: SymmetricMatrix) -> tuple[list[Pair], NDArray[np.float64]]:
    """Loss increase from zeroing each supported pair without refitting (``inf`` if it leaves the PD cone)."""
    pairs = state.support.sorted()
    if not pairs:
        return pairs, np.empty(0)
    rows = np.array([i for i, _ in pairs])
    cols = np.array([j for _, j in pairs])
    w = state.w
    alpha = -state.theta[rows, cols]
    cost = _pair_restriction(alpha, w[rows, cols], w[rows, rows], w[cols, cols], sigma_hat[rows, cols])
    return pairs, np.where(alpha == 0.0, 0.0, cost)


def backward_scan(state: PrecisionState, sigma_hat: SymmetricMatrix) -> tuple[Pair, float]:
    """Supported pair whose removal raises the loss least; ties go to the smallest pair.

    Raises:
        EmptySupport: If the support is empty.

    """
    pairs, costs = removal_costs(state, sigma_hat)
    if not pairs:
        raise EmptySupport("backward step requested on an empty support")
    k = int(np.argmin(costs))
    return pairs[k], max(float(costs[k]), 0.0)


# ---------------------------------------------------------------------------
# Refit and full algorithm
# ---------------------------------------------------------------------------


def _diagonal_step(state: PrecisionState, sigma_hat: SymmetricMatrix, i: int) -> float:
    """Exact minimization over ``Theta_ii``: ``beta* = 1/Sigma_ii - 1/W_ii``. Returns the loss decrease."""
    s_ii, w_ii = sigma_hat[i, i], state.w[i, i]
    beta = 1.0 / s_ii - 1.0 / w_ii
    ratio = s_ii / w_ii
    decrease = ratio - 1.0 - math.log(ratio)
    if beta != 0.0 and decrease > 0.0:
        state.apply_diagonal(i, beta, -decrease)
        return decrease
    return 0.0


def _zero_off_support(state: PrecisionState, support: EdgeSet) -> None:
    rows, cols = np.nonzero(np.triu(state.theta, k=1))
    for i, j in zip(rows.tolist(), cols.tolist(), strict=True):
        if (i, j) in support.pairs:
            continue
        alpha = -state.theta[i, j]
        lo, hi = pd_interval_for_pair(state.w, i, j)
        if not lo < alpha < hi:
            raise Diverged(f"cannot zero ({i}, {j}) without leaving the positive definite cone")
        state.apply_pair(i, j, alpha, 0.0)
        state.theta[i, j] = state.theta[j, i] = 0.0


def refit_support(
    sigma_hat: SymmetricMatrix,
    support: EdgeSet,
    cfg: GreedyConfig,
    warm: PrecisionState,
) -> PrecisionState:
    """Minimize the loss over ``Theta`` restricted to the diagonal plus ``support``.

    Cyclic coordinate descent with exact one-dimensional steps, started from
    ``warm``. Off-support entries of the result are exactly zero.

    Raises:
        NonConvergence: If ``cfg.max_refit_cycles`` cycles do not converge.
        Diverged: If the estimate leaves the positive definite cone.

    """
    state = warm.copy()
    state.support = support
    _zero_off_support(state, support)
    p = state.p
    pairs = support.sorted()

    for cycle in range(1, cfg.max_refit_cycles + 1):
        improvement = 0.0
        for i in range(p):
            improvement += _diagonal_step(state, sigma_hat, i)
        for i, j in pairs:
            w = state.w
            alpha, gain = pair_minimizers(
                np.array([w[i, j]]), np.array([w[i, i]]), np.array([w[j, j]]), np.array([sigma_hat[i, j]])
            )
            if gain[0] > 0.0 and alpha[0] != 0.0:
                state.apply_pair(i, j, float(alpha[0]), -float(gain[0]))
                improvement += float(gain[0])
        if improvement < cfg.refit_tol:
            logger.debug("Refit on %d pair(s) converged after %d cycle(s)", len(pairs), cycle)
            break
    else:
        raise NonConvergence(f"refit did not converge in {cfg.max_refit_cycles} cycles")

    state.refactor()
    state.recompute_loss(sigma_hat)
    return state


def _validate_sigma(sigma_hat: SymmetricMatrix) -> SymmetricMatrix:
    sigma_hat = np.asarray(sigma_hat, dtype=float)
    if sigma_hat.ndim != 2 or sigma_hat.shape[0] != sigma_hat.shape[1]:
        raise DimensionMismatch(f"Sigma_hat must be square, got shape {sigma_hat.shape}")
    if not np.allclose(sigma_hat, sigma_hat.T, rtol=0.0, atol=1e-9):
        raise InvalidParameter("Sigma_hat must be symmetric")
    if np.any(np.diag(sigma_hat) <= 0):
        raise InvalidParameter("Sigma_hat must have a positive diagonal")
    return sigma_hat


@timing
def fit_global_greedy(sigma_hat: SymmetricMatrix, cfg: GreedyConfig) -> PrecisionState:
    """Forward-backward greedy fit of a sparse precision matrix.

    Starts from ``Theta = I`` with an empty support (diagonal refitted). Each
    forward step adds the best off-support pair if its gain exceeds
    ``cfg.eps``, then refits. Backward steps then remove the cheapest pair
    while its removal costs at most ``cfg.nu`` times the forward gain recorded
    for the current support size, refitting after each removal.

    Raises:
        NonConvergence: If ``cfg.max_iter`` steps are exceeded.

    """
    sigma_hat = _validate_sigma(sigma_hat)
    p = sigma_hat.shape[0]
    state = PrecisionState.identity(sigma_hat, cfg.refactor_period)
    state = refit_support(sigma_hat, EdgeSet(p), cfg, state)
    state.trace.append((0, state.loss))

    steps = 0
    pool = ThreadPoolExecutor(max_workers=cfg.workers) if cfg.workers > 1 else None
    try:
        while True:
            if cfg.max_active is not None and len(state.support) >= cfg.max_active:
                logger.debug("Support reached max_active=%d", cfg.max_active)
                break
            try:
                pair, alpha, gain = forward_scan(state, sigma_hat, cfg.workers, pool)
            except NoCandidates:
                break
            if gain <= cfg.eps:
                logger.debug("Best forward gain %.3e <= eps %.3e, stopping", gain, cfg.eps)
                break

            state.apply_pair(*pair, alpha, -gain)
            state = refit_support(sigma_hat, state.support.with_pair(pair), cfg, state)
            state.forward_gains.append(gain)
            state.gain_history.append(gain)
            state.trace.append((len(state.support), state.loss))
            logger.debug("Forward: added %s (gain %.4e), |S| = %d", pair, gain, len(state.support))
            steps += 1

            while state.support.pairs:
                removed, increase = backward_scan(state, sigma_hat)
                threshold = cfg.nu * state.forward_gains[-1]
                if increase > threshold:
                    break
                alpha = -state.theta[removed]
                state.apply_pair(*removed, alpha, increase)
                state.theta[removed] = 0.0
                state.theta[removed[::-1]] = 0.0
                state = refit_support(sigma_hat, state.support.without_pair(removed), cfg, state)
                state.forward_gains.pop()
                state.trace.append((len(state.support), state.loss))
                logger.debug("Backward: removed %s (cost %.4e <= %.4e)", removed, increase, threshold)
                steps += 1
                if steps > cfg.max_iter:
                    break

            if steps > cfg.max_iter:
                raise NonConvergence(f"global greedy exceeded {cfg.max_iter} steps")
    finally:
        if pool is not None:
            pool.shutdown()

    logger.info("Global greedy finished: |S| = %d, loss = %.6f", len(state.support), state.loss)
    return state
