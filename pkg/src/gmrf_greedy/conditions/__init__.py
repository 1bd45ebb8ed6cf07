"""Sparsistency conditions: irrepresentability, restricted eigenvalues and guarantee thresholds."""

from __future__ import annotations

from gmrf_greedy.conditions.irrepresentability import (
    glasso_irrepresentability,
    nbd_irrepresentability,
    restricted_extreme_eigs,
)
from gmrf_greedy.conditions.report import ConditionReport, condition_report, default_subset_size
from gmrf_greedy.conditions.theory import (
    Guarantee,
    TheoryParams,
    deviation_ratio,
    eta_lower_bound,
    min_signal,
    remainder_bounds,
    scalar_remainder,
    signal_admissible,
    theorem_thresholds,
)
from gmrf_greedy.conditions.thresholds import (
    BisectResult,
    Metric,
    chain_glasso_bound,
    closed_form_tau,
    diamond_glasso_bound,
    diamond_greedy_cmin,
    diamond_nbd_bound,
    family_metric,
    family_tau_max,
    star_glasso_bound,
    star_greedy_cmin,
    threshold_bisect,
)

__all__ = [
    "BisectResult",
    "ConditionReport",
    "Guarantee",
    "Metric",
    "TheoryParams",
    "chain_glasso_bound",
    "closed_form_tau",
    "condition_report",
    "default_subset_size",
    "deviation_ratio",
    "diamond_glasso_bound",
    "diamond_greedy_cmin",
    "diamond_nbd_bound",
    "eta_lower_bound",
    "family_metric",
    "family_tau_max",
    "glasso_irrepresentability",
    "min_signal",
    "nbd_irrepresentability",
    "remainder_bounds",
    "restricted_extreme_eigs",
    "scalar_remainder",
    "signal_admissible",
    "star_glasso_bound",
    "star_greedy_cmin",
    "theorem_thresholds",
]
