"""Typer command for the condition calculators."""

from __future__ import annotations

from typing import Annotated

import typer

from gmrf_greedy._core.decorators import exit_on_error
from gmrf_greedy._core.output import write_json
from gmrf_greedy.conditions.report import condition_report
from gmrf_greedy.conditions.thresholds import Metric, closed_form_tau, threshold_bisect
from gmrf_greedy.greedy.cli import OutJsonOption
from gmrf_greedy.models.spec import Family, ModelSpec


@exit_on_error
def conditions(
    ctx: typer.Context,
    family: Annotated[Family, typer.Option("--family", help="Model family")] = Family.star,
    p: Annotated[int, typer.Option("--p", help="Number of variables")] = 4,
    tau: Annotated[float, typer.Option("--tau", help="Correlation parameter")] = 0.2,
    omega: Annotated[float, typer.Option("--omega", help="Grid edge weight")] = 0.2,
    metric: Annotated[Metric, typer.Option("--metric", help="Condition to bisect")] = Metric.glasso,
    bisect: Annotated[bool, typer.Option("--bisect", help="Find the tau where the condition fails")] = False,
    k: Annotated[int | None, typer.Option("--k", help="Subset size for restricted eigenvalues")] = None,
    out_json: OutJsonOption = None,
) -> None:
    """Report irrepresentability and restricted eigenvalue conditions for a model.

    Examples:
        gmrf conditions --family star --p 4 --tau 0.2
        gmrf conditions --family diamond --p 4 --metric nbd --bisect

    """
    truth = ModelSpec(family, p, tau=tau, omega=omega).build()
    payload = {
        "family": str(family),
        "p": p,
        "tau": tau,
        "edges": truth.edges.to_list(),
        "report": condition_report(truth.sigma, truth.edges, k).to_dict(),
    }
    if bisect:
        result = threshold_bisect(family, p, metric)
        payload["bisect"] = {
            "metric": str(metric),
            "tau": result.tau,
            "crossed": result.crossed,
            "monotone": result.monotone,
            "closed_form_tau": closed_form_tau(family, p, metric),
        }
    write_json(payload, out_json, ctx.obj.get("console"))
