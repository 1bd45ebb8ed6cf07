"""Writing command results as JSON."""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any

import numpy as np
from rich.console import Console

from gmrf_greedy._core.errors import IOFailure

logger = logging.getLogger(__name__)


def _default(obj: Any) -> Any:
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    if isinstance(obj, Path):
        return str(obj)
    raise TypeError(f"Object of type {type(obj).__name__} is not JSON serializable")


def to_json(payload: Any) -> str:
    """``json.dumps`` with numpy arrays, scalars and sets converted."""
    return json.dumps(payload, indent=2, default=_default)


def write_json(payload: Any, out_json: Path | None, console: Console | None = None) -> None:
    """Write ``payload`` to ``out_json``, or print it to stdout when no path is given."""
    text = to_json(payload)
    if out_json is None:
        (console or Console()).print_json(text)
        return
    try:
        out_json.parent.mkdir(parents=True, exist_ok=True)
        out_json.write_text(text + "\n", encoding="utf-8")
    except OSError as err:
        raise IOFailure(f"Cannot write {out_json}: {err}") from err
    logger.info("Wrote %s", out_json)
