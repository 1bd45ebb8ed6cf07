"""Sample-size thresholds and signal conditions of the greedy recovery guarantees."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from gmrf_greedy._core.errors import InvalidParameter
from gmrf_greedy.linalg.core import SymmetricMatrix, sup_norm_deviation
from gmrf_greedy.models.edges import EdgeSet
from gmrf_greedy.models.sampling import sample_covariance, sample_gaussian, trial_seed


class Guarantee(enum.StrEnum):
    """Which estimator a threshold refers to."""

    global_ = "global"
    neighborhood = "neighborhood"


def eta_lower_bound(rho: float, d: int) -> float:
    """``2 + 4 rho^2 (sqrt((rho^2 - rho) / d) + sqrt(2))^2``."""
    return 2.0 + 4.0 * rho * rho * (math.sqrt((rho * rho - rho) / d) + math.sqrt(2.0)) ** 2


@dataclass(frozen=True)
class TheoryParams:
    """Constants entering the sample-size and signal thresholds.

    Attributes:
        rho: Restricted eigenvalue ratio (>= 1).
        c_min: Restricted minimum eigenvalue (> 0).
        eta: Sparsity inflation factor; must reach :func:`eta_lower_bound`.
        d: Maximum degree.
        p: Number of variables.
        n: Number of samples.
        c: Deviation constant.

    """

    rho: float
    c_min: float
    eta: float
    d: int
    p: int
    n: int
    c: float = 1.0

    def __post_init__(self) -> None:
        if not self.rho >= 1.0:
            raise InvalidParameter(f"rho must be >= 1, got {self.rho}")
        if not self.c_min > 0:
            raise InvalidParameter(f"c_min must be > 0, got {self.c_min}")
        if self.d < 1 or self.p < 2 or self.n < 1:
            raise InvalidParameter(f"need d >= 1, p >= 2, n >= 1 (got d={self.d}, p={self.p}, n={self.n})")
        if not self.c > 0:
            raise InvalidParameter(f"c must be > 0, got {self.c}")

    @property
    def eta_min(self) -> float:
        return eta_lower_bound(self.rho, self.d)


def theorem_thresholds(params: TheoryParams, which: Guarantee | str) -> tuple[float, float]:
    """Smallest admissible stopping threshold and the matching minimum signal.

    global: ``eps = (2 c eta / rho^2) d log(p) / n``, ``signal = sqrt(8 eps / rho^2)``.
    neighborhood: ``eps = (8 c rho eta / C_min) d log(p) / n``, ``signal = sqrt(32 rho eps / C_min)``.

    Raises:
        InvalidParameter: If ``eta`` is below its lower bound.

    """
    which = Guarantee(which)
    if params.eta < params.eta_min * (1.0 - 1e-12):
        raise InvalidParameter(f"eta = {params.eta} is below its lower bound {params.eta_min:.6g}")
    scale = params.d * math.log(params.p) / params.n
    rho, c_min = params.rho, params.c_min
    if which is Guarantee.global_:
        eps = 2.0 * params.c * params.eta / rho**2 * scale
        return eps, math.sqrt(8.0 * eps / rho**2)
    eps = 8.0 * params.c * rho * params.eta / c_min * scale
    return eps, math.sqrt(32.0 * rho * eps / c_min)


def min_signal(theta: SymmetricMatrix, edges: EdgeSet, which: Guarantee | str = Guarantee.global_) -> float:
    """Smallest true-edge magnitude.

    global: ``min |Theta_ij|``. neighborhood: ``min |Theta_ij / Theta_ii|`` over
    both orientations, the regression coefficients of the node conditionals.
    """
    which = Guarantee(which)
    if not edges.pairs:
        return math.inf
    theta = np.asarray(theta, dtype=float)
    if which is Guarantee.global_:
        return min(abs(theta[i, j]) for i, j in edges)
    return min(min(abs(theta[i, j] / theta[i, i]), abs(theta[i, j] / theta[j, j])) for i, j in edges)


def signal_admissible(
    theta: SymmetricMatrix, edges: EdgeSet, params: TheoryParams, which: Guarantee | str = Guarantee.global_
) -> bool:
    """Whether every true edge is at least the minimum signal of the chosen guarantee."""
    _, required = theorem_thresholds(params, which)
    return min_signal(theta, edges, which) >= required


def scalar_remainder(gamma: float) -> float:
    """``gamma - log(1 + gamma)``; between ``gamma^2 / 4`` and ``gamma^2 / 2`` for ``gamma`` in (0, 1]."""
    if gamma <= -1.0:
        raise InvalidParameter(f"gamma must be > -1, got {gamma}")
    return gamma - math.log1p(gamma)


def remainder_bounds(gamma: float) -> tuple[float, float]:
    return gamma * gamma / 4.0, gamma * gamma / 2.0


def deviation_ratio(sigma: SymmetricMatrix, n: int, trials: int = 20, seed: int = 0) -> float:
    """Median of ``||S_n - Sigma||_max / ||S_4n - Sigma||_max`` over independent trials.

    Sup-norm deviations shrink like ``1 / sqrt(n)``, so the ratio is near 2.
    """
    if n < 1 or trials < 1:
        raise InvalidParameter(f"need n >= 1 and trials >= 1 (got n={n}, trials={trials})")
    ratios = []
    for t in range(trials):
        small = sample_covariance(sample_gaussian(sigma, n, trial_seed(seed, 2 * t)))
        large = sample_covariance(sample_gaussian(sigma, 4 * n, trial_seed(seed, 2 * t + 1)))
        ratios.append(sup_norm_deviation(small, sigma) / sup_norm_deviation(large, sigma))
    return float(np.median(ratios))
