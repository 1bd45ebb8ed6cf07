"""Support-recovery experiments: seeded trials, beta sweeps and result files."""

from __future__ import annotations

from gmrf_greedy.harness.results import CSV_FIELDS, OutputFormat, emit, parse_csv, render, spearman_by_method, summary_table
from gmrf_greedy.harness.runner import Cell, SweepResult, SweepRow, run_sweep, run_trial, sweep_cells
from gmrf_greedy.harness.spec import (
    ExperimentSpec,
    Method,
    beta_denominator,
    beta_to_n,
    default_experiment,
    load_experiment,
)

__all__ = [
    "CSV_FIELDS",
    "Cell",
    "ExperimentSpec",
    "Method",
    "OutputFormat",
    "SweepResult",
    "SweepRow",
    "beta_denominator",
    "beta_to_n",
    "default_experiment",
    "emit",
    "load_experiment",
    "parse_csv",
    "render",
    "run_sweep",
    "run_trial",
    "spearman_by_method",
    "summary_table",
    "sweep_cells",
]
