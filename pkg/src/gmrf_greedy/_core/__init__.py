"""Core utilities for gmrf-greedy."""

from __future__ import annotations

from gmrf_greedy._core.config import AppConfig, SolverDefaults
from gmrf_greedy._core.decorators import exit_on_error, timing
from gmrf_greedy._core.errors import (
    CombinatorialBlowup,
    ConfigurationError,
    DimensionMismatch,
    DimensionTooLarge,
    Diverged,
    EmptySupport,
    GmrfError,
    InvalidInputError,
    InvalidParameter,
    IOFailure,
    NoCandidates,
    NonConvergence,
    NotPositiveDefinite,
    NumericalError,
    RankDeficient,
    SelectionError,
    SingularUpdate,
    ZeroColumn,
)
from gmrf_greedy._core.logging import setup_logging

__all__ = [
    "AppConfig",
    "CombinatorialBlowup",
    "ConfigurationError",
    "DimensionMismatch",
    "DimensionTooLarge",
    "Diverged",
    "EmptySupport",
    "GmrfError",
    "IOFailure",
    "InvalidInputError",
    "InvalidParameter",
    "NoCandidates",
    "NonConvergence",
    "NotPositiveDefinite",
    "NumericalError",
    "RankDeficient",
    "SelectionError",
    "SingularUpdate",
    "SolverDefaults",
    "ZeroColumn",
    "exit_on_error",
    "setup_logging",
    "timing",
]
