"""Logger setup for the solvers and the CLI.

Solver progress (accepted steps, refit cycles, failed trials) is logged under
the ``gmrf_greedy`` hierarchy. Everything goes to stderr so sweep rows on
stdout can be piped straight into a CSV file.
"""

from __future__ import annotations

import logging
import sys
from pathlib import Path

from gmrf_greedy._core.errors import ConfigurationError

CONSOLE_FORMAT = "%(levelname)-7s %(name)s: %(message)s"
FILE_FORMAT = "%(asctime)s %(levelname)-7s %(name)s [%(threadName)s]: %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"


def resolve_level(level: str | int) -> int:
    """Turn a level name (any case) or a logging constant into a constant."""
    if isinstance(level, int):
        return level
    value = logging.getLevelName(level.strip().upper())
    if not isinstance(value, int):
        raise ConfigurationError(f"unknown log level {level!r}")
    return value


def setup_logging(
    name: str,
    level: str | int = "INFO",
    log_file: Path | None = None,
    console: bool = True,
) -> logging.Logger:
    """Configure ``name`` once and return it.

    A second call only changes the level, so commands can raise verbosity
    after the root callback has set up handlers.

    Args:
        name: Logger name, normally ``"gmrf_greedy"``
        level: Level name or logging constant
        log_file: Also write timestamped records here; parent directories are created
        console: Attach a stderr handler

    Returns:
        The configured logger

    """
    logger = logging.getLogger(name)
    logger.setLevel(resolve_level(level))
    if logger.handlers:
        return logger

    if console:
        stream = logging.StreamHandler(sys.stderr)
        stream.setFormatter(logging.Formatter(CONSOLE_FORMAT))
        logger.addHandler(stream)

    if log_file:
        log_file.parent.mkdir(parents=True, exist_ok=True)
        # Trial workers log from pool threads; the thread name tells them apart.
        to_file = logging.FileHandler(log_file)
        to_file.setFormatter(logging.Formatter(FILE_FORMAT, datefmt=DATE_FORMAT))
        logger.addHandler(to_file)

    return logger
