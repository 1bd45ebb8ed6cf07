"""Configuration management for gmrf-greedy."""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

from dotenv import load_dotenv

from gmrf_greedy._core.errors import ConfigurationError

_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def _int_env(name: str, default: int) -> int | str:
    raw = os.getenv(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        return raw


def _float_env(name: str, default: float) -> float | str:
    raw = os.getenv(name)
    if raw is None or raw == "":
        return default
    try:
        return float(raw)
    except ValueError:
        return raw


@dataclass
class SolverDefaults:
    """Process-wide solver and harness defaults."""

    threads: int = 1
    refactor_period: int = 50
    nu: float = 0.5
    seed: int = 0
    log_level: str = "INFO"
    output_dir: Path = Path()

    @classmethod
    def from_env(cls) -> SolverDefaults:
        """Load defaults from environment variables.

        Expected variables:
            GMRF_THREADS: Worker threads for scans, per-node fits and trials
            GMRF_REFACTOR_PERIOD: Accepted inverse updates between full re-inversions
            GMRF_NU: Backward step factor
            GMRF_SEED: Base seed for sampling
            GMRF_LOG_LEVEL: Log level name
            GMRF_OUTPUT_DIR: Directory for output files

        Unparseable numbers are kept as strings so that ``validate`` can report them.

        Returns:
            SolverDefaults instance

        """
        return cls(
            threads=_int_env("GMRF_THREADS", 1),
            refactor_period=_int_env("GMRF_REFACTOR_PERIOD", 50),
            nu=_float_env("GMRF_NU", 0.5),
            seed=_int_env("GMRF_SEED", 0),
            log_level=os.getenv("GMRF_LOG_LEVEL", "INFO").upper(),
            output_dir=Path(os.getenv("GMRF_OUTPUT_DIR", ".")),
        )

    def validate(self) -> dict[str, str]:
        """Validate defaults.

        Returns:
            Dict of field names to error messages (empty if valid)

        """
        errors = {}
        if not isinstance(self.threads, int) or self.threads < 1:
            errors["threads"] = f"GMRF_THREADS must be a positive integer, got {self.threads!r}"
        if not isinstance(self.refactor_period, int) or self.refactor_period < 1:
            errors["refactor_period"] = (
                f"GMRF_REFACTOR_PERIOD must be a positive integer, got {self.refactor_period!r}"
            )
        if not isinstance(self.nu, float) or not 0.0 < self.nu < 1.0:
            errors["nu"] = f"GMRF_NU must lie in (0, 1), got {self.nu!r}"
        if not isinstance(self.seed, int) or self.seed < 0:
            errors["seed"] = f"GMRF_SEED must be a non-negative integer, got {self.seed!r}"
        if self.log_level not in _LOG_LEVELS:
            errors["log_level"] = f"GMRF_LOG_LEVEL must be one of {', '.join(_LOG_LEVELS)}"
        return errors


class AppConfig:
    """Main application configuration loader."""

    def __init__(self, env_file: Path | None = None, load_env: bool = True):
        """Initialize configuration from environment.

        Args:
            env_file: Optional path to .env file. If not provided,
                     looks for .env in current directory or ~/.gmrf_greedy.env
            load_env: Whether to load from .env files (default True). Set False in tests.

        """
        if load_env:
            if env_file and env_file.exists():
                load_dotenv(env_file)
            else:
                for default in [
                    Path(".env"),
                    Path.home() / ".gmrf_greedy.env",
                ]:
                    if default.exists():
                        load_dotenv(default)
                        break

        self.defaults = SolverDefaults.from_env()
        experiment_file = os.getenv("GMRF_EXPERIMENT_FILE")
        self.experiment_file = Path(experiment_file) if experiment_file else None

    def validate(self) -> dict[str, str]:
        """Validate all loaded settings.

        Returns:
            Dict of field names to error messages (empty if valid)

        """
        errors = self.defaults.validate()
        if self.experiment_file is not None and not self.experiment_file.is_file():
            errors["experiment_file"] = f"GMRF_EXPERIMENT_FILE does not exist: {self.experiment_file}"
        return errors

    def require_valid(self) -> None:
        """Require the configuration to be valid.

        Raises:
            ConfigurationError: If any setting is invalid

        """
        errors = self.validate()
        if errors:
            lines = [f"{field}: {msg}" for field, msg in errors.items()]
            raise ConfigurationError("Configuration validation failed:\n  - " + "\n  - ".join(lines))
