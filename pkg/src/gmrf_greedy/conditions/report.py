"""Summary of all sparsistency conditions for one model."""

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass

from gmrf_greedy._core.errors import CombinatorialBlowup, DimensionTooLarge
from gmrf_greedy.conditions.irrepresentability import (
    glasso_irrepresentability,
    nbd_irrepresentability,
    restricted_extreme_eigs,
)
from gmrf_greedy.linalg.core import SymmetricMatrix
from gmrf_greedy.models.edges import EdgeSet

logger = logging.getLogger(__name__)


def default_subset_size(p: int, d: int) -> int:
    """``min(p, 2d)`` (at least 1): the size of a difference of two degree-``d`` supports."""
    return max(1, min(p, 2 * d))


@dataclass(frozen=True)
class ConditionReport:
    """Condition values and which methods they admit.

    ``glasso_irrep`` is ``nan`` when the model is too large for the
    Kronecker construction; ``glasso`` admissibility is then ``None``.
    """

    glasso_irrep: float
    nbd_irrep: float
    cmin_hat: float
    rho_hat: float
    k: int
    admissible: dict[str, bool | None]

    def to_dict(self) -> dict:
        return asdict(self)


def condition_report(sigma: SymmetricMatrix, edges: EdgeSet, k: int | None = None) -> ConditionReport:
    """Irrepresentability of both l1 methods and restricted eigenvalues over ``k``-subsets."""
    p = sigma.shape[0]
    k = default_subset_size(p, edges.max_degree()) if k is None else k
    try:
        glasso_value = glasso_irrepresentability(sigma, edges)
    except DimensionTooLarge as err:
        logger.warning("Skipping glasso irrepresentability: %s", err)
        glasso_value = math.nan
    nbd_value = nbd_irrepresentability(sigma, edges)
    try:
        cmin_hat, rho_hat = restricted_extreme_eigs(sigma, k)
    except CombinatorialBlowup as err:
        logger.warning("Skipping restricted eigenvalues: %s", err)
        cmin_hat, rho_hat = math.nan, math.nan
    admissible = {
        "glasso": None if math.isnan(glasso_value) else glasso_value < 1.0,
        "nbd_lasso": nbd_value < 1.0,
        "greedy": None if math.isnan(cmin_hat) else cmin_hat > 0.0,
    }
    return ConditionReport(
        glasso_irrep=glasso_value,
        nbd_irrep=nbd_value,
        cmin_hat=cmin_hat,
        rho_hat=rho_hat,
        k=k,
        admissible=admissible,
    )
