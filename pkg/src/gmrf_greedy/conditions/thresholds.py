"""Closed-form condition values for the analytic families and the tau at which a condition fails."""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass

import numpy as np

from gmrf_greedy._core.errors import InvalidParameter
from gmrf_greedy.conditions.irrepresentability import glasso_irrepresentability, nbd_irrepresentability
from gmrf_greedy.models.families import DIAMOND_TAU_MAX
from gmrf_greedy.models.spec import Family, ModelSpec

logger = logging.getLogger(__name__)

BISECT_TOL = 1e-4
GRID_POINTS = 40
BOUNDARY_MARGIN = 1e-4


class Metric(enum.StrEnum):
    glasso = "glasso"
    nbd = "nbd"


def star_glasso_bound(tau: float) -> float:
    """``|tau| (|tau| + 2)``."""
    a = abs(tau)
    return a * (a + 2.0)


def chain_glasso_bound(p: int, tau: float) -> float:
    """``|tau|^(p-2) ((p-2) |tau| + p - 1)``."""
    a = abs(tau)
    return a ** (p - 2) * ((p - 2) * a + p - 1)


def diamond_glasso_bound(tau: float) -> float:
    """``4 |tau| (|tau| + 1)``."""
    a = abs(tau)
    return 4.0 * a * (a + 1.0)


def diamond_nbd_bound(tau: float) -> float:
    return 2.0 * abs(tau)


def star_greedy_cmin(tau: float) -> float:
    return 1.0 - tau * tau


def diamond_greedy_cmin(tau: float) -> float:
    return 1.0 - 2.0 * tau * tau


def family_tau_max(family: Family | str) -> float:
    """Supremum of ``tau > 0`` keeping the family covariance positive definite."""
    family = Family(family)
    if family is Family.diamond:
        return DIAMOND_TAU_MAX
    if family in (Family.star, Family.chain):
        return 1.0
    raise InvalidParameter(f"no tau range for family {family}")


def family_metric(family: Family | str, p: int, metric: Metric | str, tau: float) -> float:
    """Irrepresentability value of ``metric`` on the family covariance at ``tau``."""
    truth = ModelSpec(Family(family), p, tau=tau).build()
    if Metric(metric) is Metric.glasso:
        return glasso_irrepresentability(truth.sigma, truth.edges)
    return nbd_irrepresentability(truth.sigma, truth.edges)


@dataclass(frozen=True)
class BisectResult:
    """Smallest ``tau`` with a condition value of at least 1.

    ``crossed`` is False when the value stays below 1 up to the positive
    definite boundary (``tau`` is then that boundary). ``monotone`` is False
    when the value decreased somewhere on the scan grid.
    """

    tau: float
    crossed: bool
    monotone: bool


def threshold_bisect(
    family: Family | str,
    p: int,
    metric: Metric | str,
    tol: float = BISECT_TOL,
) -> BisectResult:
    """Locate the ``tau`` at which the irrepresentability value reaches 1.

    The value is first scanned on a grid over ``(0, tau_max)``; the first
    bracket that crosses 1 is then bisected to width ``tol / 10``.
    """
    family, metric = Family(family), Metric(metric)
    tau_max = family_tau_max(family)
    upper = tau_max * (1.0 - BOUNDARY_MARGIN)
    grid = np.linspace(upper / GRID_POINTS, upper, GRID_POINTS)
    values = np.array([family_metric(family, p, metric, float(t)) for t in grid])
    monotone = bool(np.all(np.diff(values) >= -1e-9))
    if not monotone:
        logger.warning("%s condition on %s(p=%d) is not monotone in tau; bisection may be unreliable", metric, family, p)

    above = np.flatnonzero(values >= 1.0)
    if above.size == 0:
        return BisectResult(tau=tau_max, crossed=False, monotone=monotone)
    k = int(above[0])
    hi = float(grid[k])
    lo = float(grid[k - 1]) if k > 0 else 0.0
    while hi - lo > tol / 10.0:
        mid = 0.5 * (lo + hi)
        if family_metric(family, p, metric, mid) >= 1.0:
            hi = mid
        else:
            lo = mid
    logger.debug("%s condition on %s(p=%d) reaches 1 at tau=%.6f", metric, family, p, hi)
    return BisectResult(tau=0.5 * (lo + hi), crossed=True, monotone=monotone)


def closed_form_tau(family: Family | str, p: int, metric: Metric | str) -> float | None:
    """Root of the family's closed form in ``tau > 0``, where one is known."""
    family, metric = Family(family), Metric(metric)
    if family is Family.star and metric is Metric.glasso:
        return math.sqrt(2.0) - 1.0
    if family is Family.diamond and metric is Metric.glasso:
        return (math.sqrt(2.0) - 1.0) / 2.0
    if family is Family.diamond and metric is Metric.nbd:
        return 0.5
    if family is Family.chain and metric is Metric.glasso:
        lo, hi = 0.0, 1.0
        while hi - lo > 1e-12:
            mid = 0.5 * (lo + hi)
            lo, hi = (mid, hi) if chain_glasso_bound(p, mid) < 1.0 else (lo, mid)
        return 0.5 * (lo + hi)
    return None
