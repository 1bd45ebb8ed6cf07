"""CSV reading and writing of square matrices (row-major, no header)."""

from __future__ import annotations

import logging
from pathlib import Path

import numpy as np

from gmrf_greedy._core.errors import DimensionMismatch, InvalidParameter, IOFailure
from gmrf_greedy.linalg.core import SymmetricMatrix, symmetrize

logger = logging.getLogger(__name__)

SYMMETRY_TOL = 1e-9


def load_matrix_csv(path: Path, symmetry_tol: float = SYMMETRY_TOL) -> SymmetricMatrix:
    """Load a full square matrix, validate symmetry and symmetrize by averaging.

    Raises:
        IOFailure: If the file cannot be read or parsed.
        DimensionMismatch: If the matrix is not square.
        InvalidParameter: If it is asymmetric beyond ``symmetry_tol``.

    """
    try:
        data = np.loadtxt(path, delimiter=",", dtype=float, ndmin=2)
    except (OSError, ValueError) as err:
        raise IOFailure(f"Cannot read matrix from {path}: {err}") from err
    if data.shape[0] != data.shape[1]:
        raise DimensionMismatch(f"{path}: matrix is {data.shape[0]}x{data.shape[1]}, expected square")
    asym = float(np.max(np.abs(data - data.T)))
    if asym > symmetry_tol:
        raise InvalidParameter(f"{path}: matrix asymmetric by {asym:.3e} (tolerance {symmetry_tol:g})")
    logger.debug("Loaded %dx%d matrix from %s", data.shape[0], data.shape[1], path)
    return symmetrize(data)


def save_matrix_csv(matrix: SymmetricMatrix, path: Path) -> Path:
    """Write a matrix as CSV with full round-trip precision."""
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        np.savetxt(path, np.asarray(matrix, dtype=float), delimiter=",", fmt="%.17g")
    except OSError as err:
        raise IOFailure(f"Cannot write matrix to {path}: {err}") from err
    return path
