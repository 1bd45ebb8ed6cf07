"""Tests for linalg.io module."""

import numpy as np
import pytest

from gmrf_greedy._core.errors import DimensionMismatch, InvalidParameter, IOFailure
from gmrf_greedy.linalg import load_matrix_csv, save_matrix_csv


class TestMatrixCsv:
    """Test matrix CSV reading and writing."""

    def test_save_then_load(self, tmp_path, chain4):
        path = save_matrix_csv(chain4, tmp_path / "out" / "sigma.csv")
        np.testing.assert_array_equal(load_matrix_csv(path), chain4)

    def test_small_asymmetry_is_averaged(self, matrix_csv):
        path = matrix_csv([[1.0, 0.5 + 1e-12], [0.5, 1.0]])
        loaded = load_matrix_csv(path)
        assert loaded[0, 1] == loaded[1, 0]

    def test_asymmetric_rejected(self, matrix_csv):
        with pytest.raises(InvalidParameter, match="asymmetric"):
            load_matrix_csv(matrix_csv([[1.0, 0.5], [0.4, 1.0]]))

    def test_non_square_rejected(self, matrix_csv):
        with pytest.raises(DimensionMismatch):
            load_matrix_csv(matrix_csv(np.ones((2, 3))))

    def test_missing_file(self, tmp_path):
        with pytest.raises(IOFailure):
            load_matrix_csv(tmp_path / "missing.csv")
