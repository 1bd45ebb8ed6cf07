"""Typer commands for the greedy estimators."""

from __future__ import annotations

import enum
from pathlib import Path
from typing import Annotated

import typer

from gmrf_greedy._core.decorators import exit_on_error
from gmrf_greedy._core.errors import InvalidParameter
from gmrf_greedy._core.output import write_json
from gmrf_greedy.greedy.config import GreedyConfig, stopping_threshold
from gmrf_greedy.greedy.global_fit import fit_global_greedy
from gmrf_greedy.greedy.neighborhood import fit_nbd_greedy
from gmrf_greedy.models.inputs import load_inputs

SigmaOption = Annotated[
    Path | None, typer.Option("--sigma", exists=True, dir_okay=False, help="Covariance matrix CSV (p x p)")
]
DataOption = Annotated[Path | None, typer.Option("--data", exists=True, dir_okay=False, help="Sample CSV (n x p)")]
EpsOption = Annotated[float | None, typer.Option("--eps", help="Explicit stopping threshold")]
COption = Annotated[float | None, typer.Option("--c", help="Threshold constant: eps = c * d * log(p) / n")]
DOption = Annotated[int | None, typer.Option("--d", help="Degree used in the threshold formula")]
NOption = Annotated[int | None, typer.Option("--n", help="Sample size for --c when fitting a covariance")]
NuOption = Annotated[float | None, typer.Option("--nu", help="Backward step factor in (0, 1)")]
MaxActiveOption = Annotated[int | None, typer.Option("--max-active", help="Cap on the support size")]
OutJsonOption = Annotated[Path | None, typer.Option("--out-json", help="Write the result here instead of stdout")]


class RuleChoice(enum.StrEnum):
    """Which symmetrized edge set to report."""

    AND = "and"
    OR = "or"
    BOTH = "both"


def resolve_eps(eps: float | None, c: float | None, d: int | None, p: int, n: int | None) -> float:
    """Explicit ``--eps``, or ``c * d * log(p) / n`` from ``--c``/``--d``."""
    if eps is not None:
        if c is not None:
            raise InvalidParameter("pass either --eps or --c, not both")
        return eps
    if c is None or d is None:
        raise InvalidParameter("pass --eps, or --c together with --d")
    if n is None:
        raise InvalidParameter("--c needs a sample size: pass --data or --n")
    return stopping_threshold(c, d, p, n)


def _greedy_config(ctx: typer.Context, eps: float, nu: float | None, max_active: int | None) -> GreedyConfig:
    defaults = ctx.obj["defaults"]
    return GreedyConfig(
        eps=eps,
        nu=defaults.nu if nu is None else nu,
        max_active=max_active,
        refactor_period=defaults.refactor_period,
        workers=ctx.obj["threads"],
    )


@exit_on_error
def fit_global(
    ctx: typer.Context,
    sigma: SigmaOption = None,
    data: DataOption = None,
    eps: EpsOption = None,
    c: COption = None,
    d: DOption = None,
    n: NOption = None,
    nu: NuOption = None,
    max_active: MaxActiveOption = None,
    out_json: OutJsonOption = None,
) -> None:
    """Fit a sparse precision matrix with the global forward-backward greedy method.

    Examples:
        gmrf fit-global --data samples.csv --c 1.5 --d 2
        gmrf fit-global --sigma cov.csv --eps 1e-6 --out-json fit.json

    """
    sigma_hat, samples = load_inputs(sigma, data)
    p = sigma_hat.shape[0]
    sample_size = n if data is None else samples.n
    cfg = _greedy_config(ctx, resolve_eps(eps, c, d, p, sample_size), nu, max_active)
    state = fit_global_greedy(sigma_hat, cfg)
    write_json(
        {
            "p": p,
            "eps": cfg.eps,
            "nu": cfg.nu,
            "support": state.support.to_list(),
            "theta": state.theta,
            "loss": state.loss,
            "loss_trace": [loss for _, loss in state.trace],
            "support_size_trace": [size for size, _ in state.trace],
            "forward_gains": state.gain_history,
        },
        out_json,
        ctx.obj.get("console"),
    )


@exit_on_error
def fit_nbd(
    ctx: typer.Context,
    data: DataOption = None,
    sigma: SigmaOption = None,
    eps: EpsOption = None,
    c: COption = None,
    d: DOption = None,
    n: NOption = None,
    nu: NuOption = None,
    max_active: MaxActiveOption = None,
    rule: Annotated[RuleChoice, typer.Option("--rule", help="Symmetrization rule to report")] = RuleChoice.BOTH,
    out_json: OutJsonOption = None,
) -> None:
    """Recover the graph by greedy neighborhood regression at every node.

    Examples:
        gmrf fit-nbd --data samples.csv --c 1.5 --d 2 --rule and

    """
    sigma_hat, samples = load_inputs(sigma, data)
    p = sigma_hat.shape[0]
    sample_size = n if data is None else samples.n
    cfg = _greedy_config(ctx, resolve_eps(eps, c, d, p, sample_size), nu, max_active)
    graph = fit_nbd_greedy(samples, cfg)
    payload = {
        "p": p,
        "eps": cfg.eps,
        "nu": cfg.nu,
        "neighborhoods": [sorted(hood) for hood in graph.neighborhoods],
    }
    if rule in (RuleChoice.AND, RuleChoice.BOTH):
        payload["edges_and"] = graph.edges_and.to_list()
    if rule in (RuleChoice.OR, RuleChoice.BOTH):
        payload["edges_or"] = graph.edges_or.to_list()
    write_json(payload, out_json, ctx.obj.get("console"))
