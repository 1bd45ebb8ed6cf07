"""Settings shared by the global and neighborhood greedy estimators."""

from __future__ import annotations

import math
from dataclasses import dataclass

from gmrf_greedy._core.errors import InvalidParameter

DEFAULT_NU = 0.5


def stopping_threshold(c: float, d: int, p: int, n: int) -> float:
    """``eps_S = c * d * log(p) / n``."""
    if c <= 0 or d < 1 or p < 2 or n < 1:
        raise InvalidParameter(f"need c > 0, d >= 1, p >= 2, n >= 1 (got c={c}, d={d}, p={p}, n={n})")
    return c * d * math.log(p) / n


@dataclass(frozen=True)
class GreedyConfig:
    """Forward-backward greedy settings.

    Attributes:
        eps: Stopping threshold; forward steps stop once the best gain is ``<= eps``.
        nu: Backward factor in (0, 1); removals cost at most ``nu`` times the last forward gain.
        refit_tol: A refit stops when a full coordinate cycle improves the loss by less.
        max_active: Cap on the support size (``None`` for no cap).
        refactor_period: Accepted inverse updates between full re-inversions.
        max_iter: Cap on forward plus backward steps.
        max_refit_cycles: Cap on coordinate descent cycles per refit.
        workers: Threads used by candidate scans and per-node fits.

    """

    eps: float
    nu: float = DEFAULT_NU
    refit_tol: float = 1e-11
    max_active: int | None = None
    refactor_period: int = 50
    max_iter: int = 10_000
    max_refit_cycles: int = 5_000
    workers: int = 1

    def __post_init__(self) -> None:
        if not self.eps > 0:
            raise InvalidParameter(f"eps must be > 0, got {self.eps}")
        if not 0.0 < self.nu < 1.0:
            raise InvalidParameter(f"nu must lie in (0, 1), got {self.nu}")
        if not self.refit_tol > 0:
            raise InvalidParameter(f"refit_tol must be > 0, got {self.refit_tol}")
        if self.max_active is not None and self.max_active < 0:
            raise InvalidParameter(f"max_active must be >= 0, got {self.max_active}")
        if self.refactor_period < 1:
            raise InvalidParameter(f"refactor_period must be >= 1, got {self.refactor_period}")
        if self.max_iter < 1 or self.max_refit_cycles < 1:
            raise InvalidParameter("iteration caps must be >= 1")
        if self.workers < 1:
            raise InvalidParameter(f"workers must be >= 1, got {self.workers}")

    @classmethod
    def from_constant(cls, c: float, d: int, p: int, n: int, **kwargs) -> GreedyConfig:
        """Config with ``eps = c * d * log(p) / n``."""
        return cls(eps=stopping_threshold(c, d, p, n), **kwargs)
