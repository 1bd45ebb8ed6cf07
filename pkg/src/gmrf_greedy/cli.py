"""Command-line interface for gmrf-greedy."""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Annotated

import typer
from rich.console import Console

from gmrf_greedy._core.config import AppConfig
from gmrf_greedy._core.errors import ConfigurationError
from gmrf_greedy._core.logging import setup_logging
from gmrf_greedy.harness.results import OutputFormat

app = typer.Typer(
    name="gmrf",
    help=(
        "Learn sparse Gaussian graphical models with forward-backward greedy methods.\n\n"
        "Examples:\n"
        "    gmrf generate --family chain --p 36 --n 500\n"
        "    gmrf fit-global --data samples.csv --c 1.5 --d 2\n"
        "    gmrf fit-nbd --data samples.csv --c 1.5 --d 2 --rule and\n"
        "    gmrf fit-glasso --data samples.csv --cv-folds 5\n"
        "    gmrf conditions --family diamond --p 4 --metric nbd --bisect\n"
        "    gmrf --threads 4 --out chain.csv sweep --family chain --p 36"
    ),
    rich_markup_mode="rich",
    no_args_is_help=True,
)


@app.callback()
def main_callback(
    ctx: typer.Context,
    config: Annotated[
        Path | None,
        typer.Option("--config", exists=True, help="Path to .env configuration file"),
    ] = None,
    verbose: Annotated[
        bool,
        typer.Option("--verbose", "-v", help="Enable verbose output (DEBUG level)"),
    ] = False,
    seed: Annotated[int | None, typer.Option("--seed", help="Base seed for sampling")] = None,
    threads: Annotated[int | None, typer.Option("--threads", help="Worker threads")] = None,
    out: Annotated[Path | None, typer.Option("--out", help="Sweep output file (default: stdout)")] = None,
    fmt: Annotated[OutputFormat, typer.Option("--format", help="Sweep output format")] = OutputFormat.csv,
) -> None:
    """Global callback that sets up logging and shared state."""
    ctx.ensure_object(dict)

    app_config = AppConfig(env_file=config)
    errors = app_config.validate()
    if errors:
        console = Console(stderr=True)
        console.print(f"[red]Error ({ConfigurationError.__name__}):[/red] invalid configuration")
        for field, msg in errors.items():
            console.print(f"  - {field}: {msg}")
        raise typer.Exit(ConfigurationError.exit_code)
    defaults = app_config.defaults

    log_level = logging.DEBUG if verbose else defaults.log_level
    logger = setup_logging("gmrf_greedy", level=log_level)
    ctx.obj["logger"] = logger
    ctx.obj["defaults"] = defaults
    ctx.obj["seed"] = seed
    ctx.obj["threads"] = threads if threads is not None else defaults.threads
    ctx.obj["out"] = out
    ctx.obj["format"] = fmt
    ctx.obj["output_dir"] = defaults.output_dir
    ctx.obj["console"] = Console()

    if ctx.obj["threads"] < 1:
        Console(stderr=True).print("[red]Error:[/red] --threads must be >= 1")
        raise typer.Exit(2)
    logger.debug("Threads: %d, output directory: %s", ctx.obj["threads"], ctx.obj["output_dir"])


# ============================================================================
# Command Registration
# ============================================================================


def _register_commands() -> None:
    from gmrf_greedy.baselines.cli import fit_glasso_cmd, fit_nbd_lasso_cmd
    from gmrf_greedy.conditions.cli import conditions
    from gmrf_greedy.greedy.cli import fit_global, fit_nbd
    from gmrf_greedy.harness.cli import sweep
    from gmrf_greedy.models.cli import generate

    app.command(name="generate")(generate)
    app.command(name="fit-global")(fit_global)
    app.command(name="fit-nbd")(fit_nbd)
    app.command(name="fit-glasso")(fit_glasso_cmd)
    app.command(name="fit-nbd-lasso")(fit_nbd_lasso_cmd)
    app.command(name="conditions")(conditions)
    app.command(name="sweep")(sweep)


_register_commands()


def main() -> None:
    """Entry point for CLI."""
    app()


if __name__ == "__main__":
    main()
