"""Forward-backward greedy estimators: global precision fit and per-node neighborhoods."""

from __future__ import annotations

from gmrf_greedy.greedy.config import DEFAULT_NU, GreedyConfig, stopping_threshold
from gmrf_greedy.greedy.global_fit import (
    PrecisionState,
    backward_scan,
    fit_global_greedy,
    forward_scan,
    gaussian_loss,
    pair_minimizers,
    refit_support,
    removal_costs,
    single_pair_min,
)
from gmrf_greedy.greedy.neighborhood import (
    CombineRule,
    GraphEstimate,
    NeighborhoodState,
    combine_neighborhoods,
    fit_nbd_greedy,
    fit_neighborhood,
    forward_gain,
    graph_from_neighborhoods,
    ls_loss,
    refit_ls,
)

__all__ = [
    "DEFAULT_NU",
    "CombineRule",
    "GraphEstimate",
    "GreedyConfig",
    "NeighborhoodState",
    "PrecisionState",
    "backward_scan",
    "combine_neighborhoods",
    "fit_global_greedy",
    "fit_nbd_greedy",
    "fit_neighborhood",
    "forward_gain",
    "forward_scan",
    "graph_from_neighborhoods",
    "gaussian_loss",
    "ls_loss",
    "pair_minimizers",
    "refit_ls",
    "refit_support",
    "removal_costs",
    "single_pair_min",
    "stopping_threshold",
]
