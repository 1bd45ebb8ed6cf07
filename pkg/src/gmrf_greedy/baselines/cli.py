"""Typer commands for the l1 baselines."""

from __future__ import annotations

from pathlib import Path
from typing import Annotated

import typer

from gmrf_greedy._core.decorators import exit_on_error
from gmrf_greedy._core.errors import InvalidParameter
from gmrf_greedy._core.output import write_json
from gmrf_greedy.baselines.config import LassoConfig
from gmrf_greedy.baselines.cv import DEFAULT_C_GRID, CVMethod, select_lambda_cv
from gmrf_greedy.baselines.glasso import solve_glasso
from gmrf_greedy.baselines.lasso import fit_nbd_lasso
from gmrf_greedy.greedy.cli import DataOption, OutJsonOption, RuleChoice, SigmaOption
from gmrf_greedy.models.edges import edge_set_of_precision
from gmrf_greedy.models.inputs import load_inputs
from gmrf_greedy.models.sampling import SampleSet

LambdaOption = Annotated[float | None, typer.Option("--lambda", help="Explicit penalty weight")]
COption = Annotated[float | None, typer.Option("--c", help="Penalty constant: lambda = c * sqrt(log(p) / n)")]
NOption = Annotated[int | None, typer.Option("--n", help="Sample size for --c when fitting a covariance")]
FoldsOption = Annotated[int, typer.Option("--cv-folds", help="Choose c by k-fold cross-validation (k >= 2)")]
GridOption = Annotated[str | None, typer.Option("--c-grid", help="Comma-separated c values for cross-validation")]


def parse_grid(text: str | None) -> tuple[float, ...]:
    if text is None:
        return DEFAULT_C_GRID
    try:
        grid = tuple(float(part) for part in text.split(",") if part.strip())
    except ValueError as err:
        raise InvalidParameter(f"--c-grid must be comma-separated numbers, got {text!r}") from err
    if not grid:
        raise InvalidParameter("--c-grid is empty")
    return grid


def resolve_lasso_config(
    lam: float | None,
    c: float | None,
    folds: int,
    grid: str | None,
    samples: SampleSet,
    n: int | None,
    method: CVMethod,
) -> LassoConfig:
    """Explicit ``--lambda``, a scaled ``--c``, or a cross-validated ``c``."""
    chosen = sum(x is not None for x in (lam, c)) + (folds > 0)
    if chosen != 1:
        raise InvalidParameter("pass exactly one of --lambda, --c or --cv-folds")
    if lam is not None:
        return LassoConfig(lam=lam)
    if folds > 0:
        if samples.population:
            raise InvalidParameter("cross-validation needs --data samples")
        c = select_lambda_cv(samples, folds, parse_grid(grid), method)
    sample_size = n if samples.population else samples.n
    if sample_size is None:
        raise InvalidParameter("--c needs a sample size: pass --data or --n")
    return LassoConfig.scaled(c, samples.p, sample_size)


@exit_on_error
def fit_glasso_cmd(
    ctx: typer.Context,
    sigma: SigmaOption = None,
    data: DataOption = None,
    lam: LambdaOption = None,
    c: COption = None,
    n: NOption = None,
    cv_folds: FoldsOption = 0,
    c_grid: GridOption = None,
    out_json: OutJsonOption = None,
) -> None:
    """Fit the l1-penalized Gaussian likelihood (graphical lasso).

    Examples:
        gmrf fit-glasso --data samples.csv --c 1.0
        gmrf fit-glasso --data samples.csv --cv-folds 5 --c-grid 0.5,1,2

    """
    sigma_hat, samples = load_inputs(sigma, data)
    cfg = resolve_lasso_config(lam, c, cv_folds, c_grid, samples, n, CVMethod.glasso)
    result = solve_glasso(sigma_hat, cfg)
    write_json(
        {
            "p": sigma_hat.shape[0],
            "lambda": cfg.lam,
            "c": cfg.c,
            "edges": edge_set_of_precision(result.theta).to_list(),
            "theta": result.theta,
            "objective": result.objective,
            "duality_gap": result.gap,
            "iterations": result.iterations,
        },
        out_json,
        ctx.obj.get("console"),
    )


@exit_on_error
def fit_nbd_lasso_cmd(
    ctx: typer.Context,
    data: DataOption = None,
    sigma: SigmaOption = None,
    lam: LambdaOption = None,
    c: COption = None,
    n: NOption = None,
    cv_folds: FoldsOption = 0,
    c_grid: GridOption = None,
    rule: Annotated[RuleChoice, typer.Option("--rule", help="Symmetrization rule to report")] = RuleChoice.BOTH,
    out_json: OutJsonOption = None,
) -> None:
    """Recover the graph by l1-penalized regression at every node.

    Examples:
        gmrf fit-nbd-lasso --data samples.csv --c 1.0 --rule and

    """
    _, samples = load_inputs(sigma, data)
    cfg = resolve_lasso_config(lam, c, cv_folds, c_grid, samples, n, CVMethod.nbd)
    graph = fit_nbd_lasso(samples, cfg, workers=ctx.obj["threads"])
    payload = {
        "p": samples.p,
        "lambda": cfg.lam,
        "c": cfg.c,
        "neighborhoods": [sorted(hood) for hood in graph.neighborhoods],
    }
    if rule in (RuleChoice.AND, RuleChoice.BOTH):
        payload["edges_and"] = graph.edges_and.to_list()
    if rule in (RuleChoice.OR, RuleChoice.BOTH):
        payload["edges_or"] = graph.edges_or.to_list()
    write_json(payload, out_json, ctx.obj.get("console"))
