"""Dense symmetric linear algebra: factorization, log-determinant and inverse maintenance."""

from __future__ import annotations

from gmrf_greedy.linalg.core import (
    CholeskyFactor,
    SymmetricMatrix,
    cholesky_factor,
    diagonal_update_inverse,
    invert_pd,
    is_positive_definite,
    log_det_pd,
    pair_determinant_ratio,
    pair_update_inverse,
    pd_interval_for_pair,
    sup_norm_deviation,
    symmetrize,
)
from gmrf_greedy.linalg.io import load_matrix_csv, save_matrix_csv

__all__ = [
    "CholeskyFactor",
    "SymmetricMatrix",
    "cholesky_factor",
    "diagonal_update_inverse",
    "invert_pd",
    "is_positive_definite",
    "load_matrix_csv",
    "log_det_pd",
    "pair_determinant_ratio",
    "pair_update_inverse",
    "pd_interval_for_pair",
    "save_matrix_csv",
    "sup_norm_deviation",
    "symmetrize",
]
