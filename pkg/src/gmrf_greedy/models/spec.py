"""Model specifications and their ground truth."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from gmrf_greedy._core.errors import InvalidParameter
from gmrf_greedy.linalg.core import SymmetricMatrix, invert_pd, is_positive_definite, symmetrize
from gmrf_greedy.models.edges import EdgeSet, edge_set_of_precision
from gmrf_greedy.models.families import (
    grid_side,
    make_chain_cov,
    make_diamond_cov,
    make_grid_precision,
    make_star_cov,
    make_star_forest_cov,
)

SUPPORT_TOL = 1e-8


class Family(enum.StrEnum):
    """Graph families with a known precision support."""

    chain = "chain"
    star = "star"
    grid = "grid"
    diamond = "diamond"
    custom = "custom"


@dataclass(frozen=True)
class GroundTruth:
    """Population covariance, its precision and the true graph."""

    sigma: SymmetricMatrix
    theta: SymmetricMatrix
    edges: EdgeSet

    @property
    def p(self) -> int:
        return self.sigma.shape[0]

    @property
    def d(self) -> int:
        """Maximum degree of the true graph."""
        return self.edges.max_degree()


@dataclass(frozen=True)
class ModelSpec:
    """A synthetic model: family plus its parameters.

    ``star_degree`` requests the star-forest variant when smaller than ``p - 1``.
    """

    family: Family
    p: int
    tau: float = 0.5
    omega: float = 0.2
    star_degree: int | None = None
    custom_sigma: SymmetricMatrix | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "family", Family(self.family))
        if self.family is Family.diamond and self.p != 4:
            raise InvalidParameter(f"diamond requires p = 4, got {self.p}")
        if self.family is Family.grid:
            grid_side(self.p)
        if self.family is Family.custom:
            if self.custom_sigma is None:
                raise InvalidParameter("custom family requires custom_sigma")
            if self.custom_sigma.shape != (self.p, self.p):
                raise InvalidParameter(f"custom_sigma must be {self.p}x{self.p}")
            if not is_positive_definite(symmetrize(self.custom_sigma)):
                raise InvalidParameter("custom_sigma is not positive definite")

    def covariance(self) -> SymmetricMatrix:
        """The population covariance ``Sigma*`` (positive definite by construction)."""
        match self.family:
            case Family.chain:
                return make_chain_cov(self.p, self.tau)
            case Family.star:
                if self.star_degree is not None and self.star_degree < self.p - 1:
                    return make_star_forest_cov(self.p, self.star_degree, self.tau)
                return make_star_cov(self.p, self.tau)
            case Family.diamond:
                return make_diamond_cov(self.tau)
            case Family.grid:
                return invert_pd(make_grid_precision(grid_side(self.p), self.omega))
            case Family.custom:
                return symmetrize(self.custom_sigma)
        raise InvalidParameter(f"unknown family {self.family!r}")

    def build(self) -> GroundTruth:
        if self.family is Family.grid:
            theta = make_grid_precision(grid_side(self.p), self.omega)
            sigma = invert_pd(theta)
        else:
            sigma = self.covariance()
            theta = invert_pd(sigma)
        return GroundTruth(sigma=sigma, theta=theta, edges=edge_set_of_precision(theta, SUPPORT_TOL))
