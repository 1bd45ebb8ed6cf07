"""Reusable decorators for gmrf-greedy."""

from __future__ import annotations

import functools
import logging
import time
from collections.abc import Callable
from typing import Any

import typer
from rich.console import Console

from gmrf_greedy._core.errors import GmrfError

_err_console = Console(stderr=True)


def timing(func: Callable) -> Callable:
    """Decorator to measure and log function execution time at DEBUG.

    Example:
        >>> @timing
        ... def fit(sigma):
        ...     return solve(sigma)

    """

    @functools.wraps(func)
    def wrapper(*args, **kwargs) -> Any:
        logger = logging.getLogger(func.__module__)
        start = time.perf_counter()
        try:
            return func(*args, **kwargs)
        finally:
            duration = time.perf_counter() - start
            logger.debug("%s took %.3fs", func.__name__, duration)

    return wrapper


def exit_on_error(func: Callable) -> Callable:
    """Map library errors raised by a CLI command to its documented exit code.

    Invalid input exits with 2, numerical failure with 3.

    Example:
        >>> @app.command()
        ... @exit_on_error
        ... def fit_global(...): ...

    """

    @functools.wraps(func)
    def wrapper(*args, **kwargs) -> Any:
        try:
            return func(*args, **kwargs)
        except GmrfError as err:
            logging.getLogger(func.__module__).debug("Command failed", exc_info=True)
            _err_console.print(f"[red]Error ({type(err).__name__}):[/red] {err}")
            raise typer.Exit(err.exit_code) from err

    return wrapper
