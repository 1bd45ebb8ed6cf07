"""Seeded support-recovery trials and success-probability sweeps."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass

from rich.console import Console
from rich.progress import BarColumn, Progress, TaskProgressColumn, TextColumn, TimeElapsedColumn

from gmrf_greedy._core.decorators import timing
from gmrf_greedy._core.errors import GmrfError, InvalidParameter
from gmrf_greedy.baselines.config import LassoConfig
from gmrf_greedy.baselines.cv import CVMethod, select_lambda_cv
from gmrf_greedy.baselines.glasso import fit_glasso
from gmrf_greedy.baselines.lasso import fit_nbd_lasso
from gmrf_greedy.greedy.config import GreedyConfig
from gmrf_greedy.greedy.global_fit import fit_global_greedy
from gmrf_greedy.greedy.neighborhood import GraphEstimate, fit_nbd_greedy
from gmrf_greedy.harness.spec import ExperimentSpec, Method, beta_denominator, beta_to_n
from gmrf_greedy.models.edges import edge_set_of_precision
from gmrf_greedy.models.sampling import SampleSet, population_samples, sample_covariance, sample_gaussian, trial_seed
from gmrf_greedy.models.spec import GroundTruth

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SweepRow:
    family: str
    p: int
    d: int
    n: int
    beta: float
    method: str
    successes: int
    trials: int
    success_prob: float

    def __post_init__(self) -> None:
        if not 0 <= self.successes <= self.trials:
            raise InvalidParameter(f"successes {self.successes} outside 0..{self.trials}")


@dataclass(frozen=True)
class SweepResult:
    """Rows kept sorted by ``(method, beta)``."""

    rows: tuple[SweepRow, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", tuple(sorted(self.rows, key=lambda r: (r.method, r.beta, r.n))))

    def for_method(self, method: Method | str) -> list[SweepRow]:
        return [row for row in self.rows if row.method == str(method)]


@dataclass(frozen=True)
class Cell:
    method: Method
    n: int
    beta: float


def _neighborhoods_match(graph: GraphEstimate, truth: GroundTruth) -> bool:
    return all(graph.neighborhoods[r] == truth.edges.neighbors(r) for r in range(truth.p))


def _lasso_config(spec: ExperimentSpec, samples: SampleSet, method: Method) -> LassoConfig:
    if spec.population:
        return LassoConfig(lam=spec.population_lambda, tol=spec.lasso_tol)
    c = spec.c_lambda
    if spec.cv_folds >= 2:
        cv_method = CVMethod.glasso if method is Method.glasso else CVMethod.nbd
        c = select_lambda_cv(samples, spec.cv_folds, spec.c_grid, cv_method, LassoConfig(lam=0.0, tol=spec.lasso_tol))
    return LassoConfig.scaled(c, samples.p, samples.n, tol=spec.lasso_tol)


def _greedy_config(spec: ExperimentSpec, truth: GroundTruth, n: int) -> GreedyConfig:
    if spec.population:
        return GreedyConfig(eps=spec.population_eps, nu=spec.nu)
    return GreedyConfig.from_constant(spec.c_eps, max(truth.d, 1), truth.p, n, nu=spec.nu)


def run_trial(
    spec: ExperimentSpec,
    method: Method | str,
    n: int,
    trial_index: int,
    truth: GroundTruth | None = None,
) -> bool:
    """One seeded fit; True iff the recovered graph equals the true one exactly.

    Global methods compare edge sets, neighborhood methods compare every
    node's neighbor set. Fit errors are logged and count as failures.
    """
    method = Method(method)
    truth = truth or spec.model.build()
    seed = trial_seed(spec.base_seed, trial_index)
    samples = population_samples(truth.sigma) if spec.population else sample_gaussian(truth.sigma, n, seed)
    try:
        match method:
            case Method.global_greedy:
                state = fit_global_greedy(sample_covariance(samples), _greedy_config(spec, truth, n))
                return state.support == truth.edges
            case Method.nbd_greedy:
                return _neighborhoods_match(fit_nbd_greedy(samples, _greedy_config(spec, truth, n)), truth)
            case Method.glasso:
                theta = fit_glasso(sample_covariance(samples), _lasso_config(spec, samples, method))
                return edge_set_of_precision(theta) == truth.edges
            case Method.nbd_lasso:
                return _neighborhoods_match(fit_nbd_lasso(samples, _lasso_config(spec, samples, method)), truth)
    except GmrfError as err:
        logger.warning("%s trial %d at n=%d failed: %s", method, trial_index, n, err)
    return False


def sweep_cells(spec: ExperimentSpec, truth: GroundTruth) -> list[Cell]:
    """Every (method, sample size) point of the sweep."""
    d = max(truth.d, 1)
    denominator = beta_denominator(spec.model.family, truth.p, d)
    if spec.n_list:
        points = [(n, n / denominator) for n in spec.n_list]
    else:
        points = [(beta_to_n(spec.model.family, truth.p, d, b), b) for b in spec.beta_list]
    return [Cell(method, n, beta) for method in spec.methods for n, beta in points]


@timing
def run_sweep(
    spec: ExperimentSpec,
    workers: int = 1,
    console: Console | None = None,
    show_progress: bool = True,
) -> SweepResult:
    """Run ``spec.trials`` trials at every cell and aggregate success counts.

    Trials run on ``workers`` threads. Each trial has its own seed, so the
    result does not depend on the thread count or completion order.
    """
    truth = spec.model.build()
    cells = sweep_cells(spec, truth)
    jobs = [(c, t) for c, cell in enumerate(cells) for t in range(spec.trials)]
    outcomes = [False] * len(jobs)
    logger.info("Sweep: %d cell(s) x %d trial(s) on %d worker(s)", len(cells), spec.trials, workers)

    def run(index: int) -> bool:
        cell_index, trial = jobs[index]
        cell = cells[cell_index]
        return run_trial(spec, cell.method, cell.n, trial, truth)

    with Progress(
        TextColumn("[progress.description]{task.description}"),
        BarColumn(),
        TaskProgressColumn(),
        TimeElapsedColumn(),
        console=console or Console(stderr=True),
        disable=not show_progress,
    ) as progress:
        task_id = progress.add_task("Running trials", total=len(jobs))
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                futures = {pool.submit(run, k): k for k in range(len(jobs))}
                for future in as_completed(futures):
                    outcomes[futures[future]] = future.result()
                    progress.update(task_id, advance=1)
        else:
            for k in range(len(jobs)):
                outcomes[k] = run(k)
                progress.update(task_id, advance=1)

    successes = [0] * len(cells)
    for (cell_index, _), ok in zip(jobs, outcomes, strict=True):
        successes[cell_index] += int(ok)
    rows = [
        SweepRow(
            family=str(spec.model.family),
            p=truth.p,
            d=truth.d,
            n=cell.n,
            beta=cell.beta,
            method=str(cell.method),
            successes=count,
            trials=spec.trials,
            success_prob=count / spec.trials,
        )
        for cell, count in zip(cells, successes, strict=True)
    ]
    return SweepResult(tuple(rows))
