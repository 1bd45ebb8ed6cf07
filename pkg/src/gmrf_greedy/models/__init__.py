"""Synthetic Gaussian graphical models, ground-truth graphs and seeded sampling."""

from __future__ import annotations

from gmrf_greedy.models.edges import EdgeSet, Pair, edge_set_of_precision
from gmrf_greedy.models.families import (
    grid_edges,
    grid_side,
    make_chain_cov,
    make_diamond_cov,
    make_grid_precision,
    make_star_cov,
    make_star_forest_cov,
)
from gmrf_greedy.models.sampling import (
    GENERATOR_NAME,
    SampleSet,
    load_samples_csv,
    make_rng,
    population_samples,
    sample_covariance,
    sample_gaussian,
    save_samples_csv,
    trial_seed,
)
from gmrf_greedy.models.spec import Family, GroundTruth, ModelSpec

__all__ = [
    "GENERATOR_NAME",
    "EdgeSet",
    "Family",
    "GroundTruth",
    "ModelSpec",
    "Pair",
    "SampleSet",
    "edge_set_of_precision",
    "grid_edges",
    "grid_side",
    "load_samples_csv",
    "make_chain_cov",
    "make_diamond_cov",
    "make_grid_precision",
    "make_rng",
    "make_star_cov",
    "make_star_forest_cov",
    "population_samples",
    "sample_covariance",
    "sample_gaussian",
    "save_samples_csv",
    "trial_seed",
]
