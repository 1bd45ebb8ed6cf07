"""Regularization settings for the l1 baselines."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

from gmrf_greedy._core.errors import InvalidParameter

ZERO_TOL = 1e-8


class LambdaRule(enum.StrEnum):
    explicit = "explicit"
    scaled = "scaled"


def scaled_lambda(c: float, p: int, n: int) -> float:
    """``lambda = c * sqrt(log(p) / n)``."""
    if c < 0 or p < 2 or n < 1:
        raise InvalidParameter(f"need c >= 0, p >= 2, n >= 1 (got c={c}, p={p}, n={n})")
    return c * math.sqrt(math.log(p) / n)


@dataclass(frozen=True)
class LassoConfig:
    """l1 penalty weight and solver tolerances.

    With ``rule=scaled`` the weight is ``c * sqrt(log p / n)``; use
    :meth:`scaled` to build one and :meth:`for_data` to rescale it to a new
    sample size (cross-validation training folds).
    """

    lam: float
    tol: float = 1e-8
    max_iter: int = 10_000
    rule: LambdaRule = LambdaRule.explicit
    c: float | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "rule", LambdaRule(self.rule))
        if not self.lam >= 0:
            raise InvalidParameter(f"lambda must be >= 0, got {self.lam}")
        if not self.tol > 0:
            raise InvalidParameter(f"tol must be > 0, got {self.tol}")
        if self.max_iter < 1:
            raise InvalidParameter(f"max_iter must be >= 1, got {self.max_iter}")
        if self.rule is LambdaRule.scaled and self.c is None:
            raise InvalidParameter("scaled lambda rule needs the constant c")

    @classmethod
    def scaled(cls, c: float, p: int, n: int, **kwargs) -> LassoConfig:
        return cls(lam=scaled_lambda(c, p, n), rule=LambdaRule.scaled, c=c, **kwargs)

    def for_data(self, p: int, n: int) -> LassoConfig:
        """Same settings with a scaled weight recomputed for ``(p, n)``; explicit weights are kept."""
        if self.rule is LambdaRule.explicit:
            return self
        return replace(self, lam=scaled_lambda(self.c, p, n))
