"""Tests for core.config module."""

import os
from pathlib import Path
from unittest.mock import patch

import pytest

from gmrf_greedy._core.config import AppConfig, SolverDefaults
from gmrf_greedy._core.errors import ConfigurationError


class TestSolverDefaults:
    """Test SolverDefaults dataclass."""

    def test_from_env_defaults(self):
        """Test defaults when no variable is set."""
        with patch.dict(os.environ, {}, clear=True):
            defaults = SolverDefaults.from_env()
        assert defaults.threads == 1
        assert defaults.refactor_period == 50
        assert defaults.nu == 0.5
        assert defaults.seed == 0
        assert defaults.log_level == "INFO"
        assert defaults.output_dir == Path()

    def test_from_env_success(self):
        """Test successful loading from environment."""
        with patch.dict(
            os.environ,
            {
                "GMRF_THREADS": "4",
                "GMRF_REFACTOR_PERIOD": "20",
                "GMRF_NU": "0.25",
                "GMRF_SEED": "7",
                "GMRF_LOG_LEVEL": "debug",
                "GMRF_OUTPUT_DIR": "/tmp/out",
            },
            clear=True,
        ):
            defaults = SolverDefaults.from_env()
        assert defaults.threads == 4
        assert defaults.refactor_period == 20
        assert defaults.nu == 0.25
        assert defaults.seed == 7
        assert defaults.log_level == "DEBUG"
        assert defaults.output_dir == Path("/tmp/out")

    def test_validate_success(self):
        """Test successful validation."""
        assert SolverDefaults().validate() == {}

    def test_validate_unparseable_threads(self):
        """Unparseable numbers are reported, not raised."""
        with patch.dict(os.environ, {"GMRF_THREADS": "many"}, clear=True):
            defaults = SolverDefaults.from_env()
        errors = defaults.validate()
        assert "threads" in errors
        assert "GMRF_THREADS" in errors["threads"]

    @pytest.mark.parametrize(
        ("field", "value"),
        [("threads", 0), ("refactor_period", 0), ("nu", 1.0), ("seed", -1), ("log_level", "LOUD")],
    )
    def test_validate_out_of_range(self, field, value):
        defaults = SolverDefaults(**{field: value})
        assert field in defaults.validate()


class TestAppConfig:
    """Test AppConfig class."""

    def test_init_without_env_file(self):
        """Test initialization without loading .env files."""
        with patch.dict(os.environ, {"GMRF_THREADS": "3"}, clear=True):
            config = AppConfig(load_env=False)
        assert config.defaults.threads == 3
        assert config.experiment_file is None

    def test_init_with_env_file(self, tmp_path):
        """Test initialization with an explicit .env file."""
        env_file = tmp_path / ".env"
        env_file.write_text("GMRF_SEED=11\nGMRF_NU=0.3\n")
        with patch.dict(os.environ, {}, clear=True):
            config = AppConfig(env_file=env_file)
        assert config.defaults.seed == 11
        assert config.defaults.nu == 0.3

    def test_require_valid_success(self):
        with patch.dict(os.environ, {}, clear=True):
            config = AppConfig(load_env=False)
            config.require_valid()

    def test_require_valid_failure(self):
        """Test require_valid raises on invalid settings."""
        with patch.dict(os.environ, {"GMRF_NU": "2"}, clear=True):
            config = AppConfig(load_env=False)
        with pytest.raises(ConfigurationError, match="GMRF_NU"):
            config.require_valid()

    def test_missing_experiment_file(self, tmp_path):
        with patch.dict(os.environ, {"GMRF_EXPERIMENT_FILE": str(tmp_path / "nope.yaml")}, clear=True):
            config = AppConfig(load_env=False)
        assert "experiment_file" in config.validate()
