"""Per-node forward-backward greedy least squares for neighborhood selection.

For node ``r`` the response is column ``r`` of the sample matrix and the
features are the remaining columns. The loss is ``(1/2n) ||y - X Gamma||^2``.
Neighborhoods from all nodes are combined into an undirected graph with the
AND or OR rule.
"""

from __future__ import annotations

import enum
import logging
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray
from scipy.linalg import qr, solve_triangular

from gmrf_greedy._core.decorators import timing
from gmrf_greedy._core.errors import (
    DimensionMismatch,
    InvalidParameter,
    NonConvergence,
    RankDeficient,
    ZeroColumn,
)
from gmrf_greedy.greedy.config import GreedyConfig
from gmrf_greedy.models.edges import EdgeSet
from gmrf_greedy.models.sampling import SampleSet

logger = logging.getLogger(__name__)

ZERO_COLUMN_ATOL = 1e-14
CONDITION_LIMIT = 1e12


class CombineRule(enum.StrEnum):
    """How per-node neighborhoods become undirected edges."""

    AND = "and"
    OR = "or"


@dataclass
class NeighborhoodState:
    """Fit for one node.

    ``coefficients`` has length ``p``; entries outside ``active`` (and the
    entry for ``node`` itself) are exactly zero.
    """

    node: int
    active: frozenset[int]
    coefficients: NDArray[np.float64]
    residual: NDArray[np.float64]
    loss: float
    forward_gains: list[float] = field(default_factory=list)
    gain_history: list[float] = field(default_factory=list)
    trace: list[tuple[int, float]] = field(default_factory=list)

    @property
    def neighborhood(self) -> frozenset[int]:
        return self.active


@dataclass(frozen=True)
class GraphEstimate:
    """Per-node neighborhoods and both symmetrized edge sets."""

    p: int
    neighborhoods: tuple[frozenset[int], ...]
    edges_and: EdgeSet
    edges_or: EdgeSet
    rule: CombineRule = CombineRule.AND

    @property
    def edges(self) -> EdgeSet:
        """Edge set under ``rule``."""
        return self.edges_and if self.rule is CombineRule.AND else self.edges_or


def ls_loss(gamma: NDArray, samples: SampleSet, r: int) -> float:
    """``(1/2n) sum_k (X_kr - sum_{t != r} Gamma_t X_kt)^2``.

    ``gamma`` has length ``p``; its entry ``r`` is ignored.
    """
    gamma = np.asarray(gamma, dtype=float)
    if gamma.shape != (samples.p,):
        raise DimensionMismatch(f"coefficients must have length {samples.p}, got shape {gamma.shape}")
    coef = gamma.copy()
    coef[r] = 0.0
    residual = samples.column(r) - samples.data @ coef
    return float(residual @ residual) / (2.0 * samples.n)


def forward_gain(residual: NDArray, x_t: NDArray, n: int) -> tuple[float, float]:
    """Best step along one feature and the loss decrease it buys.

    ``alpha* = <x, res> / ||x||^2`` and ``gain = <x, res>^2 / (2 n ||x||^2)``.

    Raises:
        ZeroColumn: If ``||x_t||^2 < 1e-14``.

    """
    norm_sq = float(x_t @ x_t)
    if norm_sq < ZERO_COLUMN_ATOL:
        raise ZeroColumn(f"feature has squared norm {norm_sq:.3e}")
    inner = float(x_t @ residual)
    return inner / norm_sq, inner * inner / (2.0 * n * norm_sq)


def refit_ls(samples: SampleSet, r: int, active: frozenset[int] | Sequence[int]) -> NeighborhoodState:
    """Exact least squares of column ``r`` on the ``active`` columns.

    Uses a column-pivoted QR factorization.

    Raises:
        RankDeficient: If the ratio of the largest to smallest ``|R_ii|`` exceeds ``1e12``.

    """
    active = frozenset(int(t) for t in active)
    if r in active:
        raise InvalidParameter(f"node {r} cannot be its own feature")
    y = samples.column(r)
    n, p = samples.n, samples.p
    coefficients = np.zeros(p)
    cols = sorted(active)
    if cols:
        if len(cols) > n:
            raise RankDeficient(f"{len(cols)} active features with only {n} samples")
        x = samples.data[:, cols]
        q, upper, perm = qr(x, mode="economic", pivoting=True)
        diag = np.abs(np.diag(upper))
        if diag[-1] == 0.0 or diag[0] / diag[-1] > CONDITION_LIMIT:
            raise RankDeficient(f"active features of node {r} are (nearly) collinear")
        solution = solve_triangular(upper, q.T @ y)
        coefficients[np.asarray(cols)[perm]] = solution
    residual = y - samples.data @ coefficients
    loss = float(residual @ residual) / (2.0 * n)
    return NeighborhoodState(node=r, active=active, coefficients=coefficients, residual=residual, loss=loss)


def _removal_costs(state: NeighborhoodState, samples: SampleSet) -> tuple[list[int], NDArray[np.float64]]:
    """Loss increase from zeroing each active coefficient without refitting."""
    cols = sorted(state.active)
    x = samples.data[:, cols]
    gamma = state.coefficients[cols]
    inner = x.T @ state.residual
    norms = np.einsum("ij,ij->j", x, x)
    return cols, (2.0 * gamma * inner + gamma * gamma * norms) / (2.0 * samples.n)


def _carry(old: NeighborhoodState, new: NeighborhoodState) -> NeighborhoodState:
    new.forward_gains = old.forward_gains
    new.gain_history = old.gain_history
    new.trace = old.trace
    return new


@timing
def fit_neighborhood(samples: SampleSet, r: int, cfg: GreedyConfig) -> NeighborhoodState:
    """Forward-backward greedy selection of the neighbors of node ``r``.

    A forward step adds the feature with the largest gain while that gain
    exceeds ``cfg.eps``, then refits by least squares. Backward steps then
    drop the active feature whose zeroing costs least, while the cost is at
    most ``cfg.nu`` times the forward gain recorded for the current size.
    Ties go to the smallest feature index. Features whose addition would
    make the design rank deficient are skipped for the rest of the fit.

    Raises:
        NonConvergence: If ``cfg.max_iter`` steps are exceeded.

    """
    if samples.n < 2 and not samples.population:
        raise InvalidParameter(f"neighborhood fits need n >= 2, got {samples.n}")
    if not 0 <= r < samples.p:
        raise InvalidParameter(f"node {r} outside 0..{samples.p - 1}")

    n, p = samples.n, samples.p
    data = samples.data
    norms = np.einsum("ij,ij->j", data, data)
    usable = norms >= ZERO_COLUMN_ATOL
    usable[r] = False
    blocked = np.zeros(p, dtype=bool)

    state = refit_ls(samples, r, frozenset())
    state.trace.append((0, state.loss))
    steps = 0
    while True:
        if cfg.max_active is not None and len(state.active) >= cfg.max_active:
            break
        candidates = usable & ~blocked
        candidates[list(state.active)] = False
        if not np.any(candidates):
            break
        inner = data.T @ state.residual
        with np.errstate(divide="ignore", invalid="ignore"):
            gains = np.where(candidates, inner * inner / (2.0 * n * norms), -np.inf)
        t = int(np.argmax(gains))
        gain = float(gains[t])
        if gain <= cfg.eps:
            break

        try:
            state = _carry(state, refit_ls(samples, r, state.active | {t}))
        except RankDeficient:
            logger.debug("Node %d: feature %d is collinear with the active set, skipping", r, t)
            blocked[t] = True
            continue
        state.forward_gains.append(gain)
        state.gain_history.append(gain)
        state.trace.append((len(state.active), state.loss))
        steps += 1

        while state.active:
            cols, costs = _removal_costs(state, samples)
            k = int(np.argmin(costs))
            increase = max(float(costs[k]), 0.0)
            if increase > cfg.nu * state.forward_gains[-1]:
                break
            state = _carry(state, refit_ls(samples, r, state.active - {cols[k]}))
            state.forward_gains.pop()
            state.trace.append((len(state.active), state.loss))
            logger.debug("Node %d: removed %d (cost %.4e)", r, cols[k], increase)
            steps += 1
            if steps > cfg.max_iter:
                break

        if steps > cfg.max_iter:
            raise NonConvergence(f"neighborhood fit of node {r} exceeded {cfg.max_iter} steps")

    logger.debug("Node %d: neighborhood %s", r, sorted(state.active))
    return state


def graph_from_neighborhoods(
    neighborhoods: Sequence[frozenset[int] | set[int]],
    rule: CombineRule | str = CombineRule.AND,
) -> GraphEstimate:
    """AND keeps (r, t) when each node selects the other; OR when either does."""
    p = len(neighborhoods)
    hoods = tuple(frozenset(int(t) for t in hood) for hood in neighborhoods)
    edges_and, edges_or = set(), set()
    for r, hood in enumerate(hoods):
        for t in hood:
            pair = (r, t) if r < t else (t, r)
            edges_or.add(pair)
            if r in hoods[t]:
                edges_and.add(pair)
    return GraphEstimate(
        p=p,
        neighborhoods=hoods,
        edges_and=EdgeSet(p, frozenset(edges_and)),
        edges_or=EdgeSet(p, frozenset(edges_or)),
        rule=CombineRule(rule),
    )


def combine_neighborhoods(
    states: Sequence[NeighborhoodState],
    rule: CombineRule | str = CombineRule.AND,
) -> GraphEstimate:
    """Symmetrize per-node fits; ``states[r]`` must be the fit for node ``r``."""
    for r, state in enumerate(states):
        if state.node != r:
            raise InvalidParameter(f"states must be ordered by node; position {r} holds node {state.node}")
    return graph_from_neighborhoods([state.active for state in states], rule)


@timing
def fit_nbd_greedy(
    samples: SampleSet,
    cfg: GreedyConfig,
    rule: CombineRule | str = CombineRule.AND,
) -> GraphEstimate:
    """Greedy neighborhood fits for every node, combined into a graph.

    Nodes run concurrently on ``cfg.workers`` threads; the result does not
    depend on the thread count.
    """
    p = samples.p
    if cfg.workers > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            states = list(pool.map(lambda r: fit_neighborhood(samples, r, cfg), range(p)))
    else:
        states = [fit_neighborhood(samples, r, cfg) for r in range(p)]
    return combine_neighborhoods(states, rule)
