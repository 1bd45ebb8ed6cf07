"""CSV / JSONL output of sweep results and the summary table."""

from __future__ import annotations

import csv
import enum
import io
import json
import logging
import math
from dataclasses import asdict, fields
from pathlib import Path
from typing import TextIO

from rich.table import Table
from scipy.stats import spearmanr

from gmrf_greedy._core.errors import InvalidParameter, IOFailure
from gmrf_greedy.harness.runner import SweepResult, SweepRow

logger = logging.getLogger(__name__)

CSV_FIELDS = tuple(f.name for f in fields(SweepRow))


class OutputFormat(enum.StrEnum):
    csv = "csv"
    jsonl = "jsonl"


def _cell(value: object) -> str:
    return repr(value) if isinstance(value, float) else str(value)


def render(result: SweepResult, fmt: OutputFormat | str = OutputFormat.csv) -> str:
    """Sweep rows as CSV (with header) or JSON lines, sorted by ``(method, beta)``."""
    fmt = OutputFormat(fmt)
    if fmt is OutputFormat.jsonl:
        return "".join(json.dumps(asdict(row)) + "\n" for row in result.rows)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for row in result.rows:
        writer.writerow([_cell(getattr(row, name)) for name in CSV_FIELDS])
    return buffer.getvalue()


def emit(
    result: SweepResult,
    fmt: OutputFormat | str = OutputFormat.csv,
    out: Path | None = None,
    stream: TextIO | None = None,
) -> None:
    """Write the rendered result to ``out`` or, when no path is given, to ``stream``.

    Raises:
        IOFailure: If the output cannot be written.

    """
    text = render(result, fmt)
    try:
        if out is not None:
            out.parent.mkdir(parents=True, exist_ok=True)
            out.write_text(text, encoding="utf-8", newline="")
            logger.info("Wrote %d row(s) to %s", len(result.rows), out)
        elif stream is not None:
            stream.write(text)
            stream.flush()
    except OSError as err:
        raise IOFailure(f"Cannot write sweep output: {err}") from err


def _row_from_strings(record: dict[str, str]) -> SweepRow:
    return SweepRow(
        family=record["family"],
        p=int(record["p"]),
        d=int(record["d"]),
        n=int(record["n"]),
        beta=float(record["beta"]),
        method=record["method"],
        successes=int(record["successes"]),
        trials=int(record["trials"]),
        success_prob=float(record["success_prob"]),
    )


def parse_csv(text: str) -> SweepResult:
    """Inverse of :func:`render` for CSV."""
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != CSV_FIELDS:
        raise InvalidParameter(f"unexpected CSV header {reader.fieldnames}")
    try:
        return SweepResult(tuple(_row_from_strings(record) for record in reader))
    except (KeyError, ValueError) as err:
        raise InvalidParameter(f"malformed sweep CSV: {err}") from err


def spearman_by_method(result: SweepResult) -> dict[str, float]:
    """Rank correlation between ``beta`` and success probability per method (``nan`` if undefined)."""
    out = {}
    for method in sorted({row.method for row in result.rows}):
        rows = result.for_method(method)
        betas = [row.beta for row in rows]
        probs = [row.success_prob for row in rows]
        if len(rows) < 2 or len(set(probs)) < 2 or len(set(betas)) < 2:
            out[method] = math.nan
            continue
        out[method] = float(spearmanr(betas, probs).statistic)
    return out


def summary_table(result: SweepResult) -> Table:
    table = Table(title="Support recovery", show_lines=False)
    for name, justify in (("method", "left"), ("n", "right"), ("beta", "right"), ("success", "right")):
        table.add_column(name, justify=justify)
    for row in result.rows:
        table.add_row(row.method, str(row.n), f"{row.beta:.3f}", f"{row.successes}/{row.trials} ({row.success_prob:.2f})")
    return table
