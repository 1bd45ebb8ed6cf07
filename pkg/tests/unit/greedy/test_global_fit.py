"""Tests for greedy.global_fit module."""

import math

import numpy as np
import pytest
from scipy.optimize import minimize_scalar

from gmrf_greedy._core.errors import (
    EmptySupport,
    InvalidParameter,
    NoCandidates,
    NonConvergence,
    NotPositiveDefinite,
)
from gmrf_greedy.greedy import (
    GreedyConfig,
    PrecisionState,
    backward_scan,
    fit_global_greedy,
    forward_scan,
    gaussian_loss,
    refit_support,
    removal_costs,
    single_pair_min,
)
from gmrf_greedy.linalg import invert_pd, pd_interval_for_pair
from gmrf_greedy.models import (
    EdgeSet,
    Family,
    ModelSpec,
    make_chain_cov,
    make_star_cov,
    sample_covariance,
    sample_gaussian,
)

POPULATION_EPS = 1e-6


def _cfg(**kwargs):
    return GreedyConfig(eps=kwargs.pop("eps", POPULATION_EPS), **kwargs)


class TestGaussianLoss:
    """Test gaussian_loss."""

    def test_identity(self):
        assert gaussian_loss(np.eye(3), np.eye(3)) == pytest.approx(3.0)

    def test_scaled_diagonal(self):
        assert gaussian_loss(np.diag([2.0, 2.0]), np.eye(2)) == pytest.approx(4.0 - 2.0 * math.log(2.0))
        assert gaussian_loss(np.diag([2.0, 2.0]), np.eye(2)) == pytest.approx(2.613706, abs=1e-6)

    def test_at_inverse(self, pair_sigma):
        assert gaussian_loss(invert_pd(pair_sigma), pair_sigma) == pytest.approx(1.712318, abs=1e-6)


class TestSinglePairMin:
    """Test the closed-form single-entry minimizer."""

    def test_zero_correlation(self):
        alpha, gain = single_pair_min(np.eye(3), np.eye(3), 0, 1)
        assert alpha == 0.0
        assert gain == 0.0

    @pytest.mark.parametrize("sign", [1.0, -1.0])
    def test_unit_inverse(self, sign):
        sigma = np.array([[1.0, 0.5 * sign], [0.5 * sign, 1.0]])
        alpha, gain = single_pair_min(np.eye(2), sigma, 0, 1)
        assert alpha == pytest.approx(-sign * (math.sqrt(2.0) - 1.0), abs=1e-12)
        assert gain == pytest.approx(0.225993, abs=1e-6)

    def test_diagonal_pair_rejected(self):
        with pytest.raises(InvalidParameter):
            single_pair_min(np.eye(2), np.eye(2), 1, 1)

    @pytest.mark.parametrize(("i", "j"), [(0, 1), (0, 2), (1, 3), (2, 3)])
    def test_matches_bounded_search(self, chain4, i, j):
        """Agrees with a bounded scalar search on the dense loss."""
        w = chain4
        theta = invert_pd(w)
        sigma_hat = make_star_cov(4, 0.3)
        base = gaussian_loss(theta, sigma_hat)

        def along(alpha):
            moved = theta.copy()
            moved[i, j] += alpha
            moved[j, i] += alpha
            try:
                return gaussian_loss(moved, sigma_hat)
            except NotPositiveDefinite:
                return math.inf

        lo, hi = pd_interval_for_pair(w, i, j)
        span = hi - lo
        oracle = minimize_scalar(along, bounds=(lo + 1e-9 * span, hi - 1e-9 * span), method="bounded", options={"xatol": 1e-12})
        alpha, gain = single_pair_min(w, sigma_hat, i, j)
        assert alpha == pytest.approx(oracle.x, abs=1e-5)
        assert gain == pytest.approx(base - oracle.fun, abs=1e-9)
        assert gain >= 0.0


def _golden_pair_check(seed, random_precision, p=5):
    """Compare single_pair_min with golden-section search on the dense loss change."""
    rng = np.random.default_rng(seed)
    w = invert_pd(random_precision(rng, p, low=1.0))
    x = rng.standard_normal((3 * p, p))
    sigma_hat = x.T @ x / (3 * p)
    i, j = sorted(rng.choice(p, size=2, replace=False).tolist())
    lo, hi = pd_interval_for_pair(w, i, j)

    def change(alpha):
        # L(Theta + alpha E) - L(Theta) = 2 alpha S_ij - log det(I + alpha E W)
        moved = np.eye(p)
        moved[i, :] += alpha * w[j, :]
        moved[j, :] += alpha * w[i, :]
        sign, logdet = np.linalg.slogdet(moved)
        return math.inf if sign <= 0 else 2.0 * alpha * sigma_hat[i, j] - logdet

    grid = np.linspace(lo, hi, 403)[1:-1]
    k = min(max(int(np.argmin([change(a) for a in grid])), 1), len(grid) - 2)
    oracle = minimize_scalar(change, bracket=(grid[k - 1], grid[k], grid[k + 1]), method="golden", options={"xtol": 1e-12})

    alpha, gain = single_pair_min(w, sigma_hat, i, j)
    assert abs(alpha - oracle.x) <= 1e-7, seed
    assert gain == pytest.approx(-oracle.fun, abs=1e-10), seed


class TestPairMinimizerRandomized:
    """single_pair_min against golden-section search on random instances."""

    @pytest.mark.parametrize("seed", range(40))
    def test_matches_golden_section(self, random_precision, seed):
        _golden_pair_check(seed, random_precision)

    @pytest.mark.slow
    def test_matches_golden_section_thousand_instances(self, random_precision):
        for seed in range(1000):
            _golden_pair_check(seed, random_precision)


class TestScans:
    """Test forward_scan, removal_costs and backward_scan."""

    def test_all_zero_gains_pick_first_pair(self):
        state = PrecisionState.identity(np.eye(3))
        assert forward_scan(state, np.eye(3)) == ((0, 1), 0.0, 0.0)

    def test_chain_tie_goes_to_smallest_pair(self):
        sigma = make_chain_cov(3, 0.5)
        pair, _, gain = forward_scan(PrecisionState.identity(sigma), sigma)
        _, other = single_pair_min(np.eye(3), sigma, 1, 2)
        assert pair == (0, 1)
        assert gain == pytest.approx(other, rel=1e-12)

    def test_star_prefers_hub(self):
        sigma = make_star_cov(4, 0.4)
        pair, _, _ = forward_scan(PrecisionState.identity(sigma), sigma)
        assert pair[0] == 0

    def test_skips_support(self):
        sigma = make_chain_cov(3, 0.5)
        state = PrecisionState.identity(sigma)
        state.support = EdgeSet.from_pairs(3, [(0, 1)])
        pair, _, _ = forward_scan(state, sigma)
        assert pair == (1, 2)

    @pytest.mark.parametrize("workers", [2, 3, 8])
    def test_parallel_matches_sequential(self, workers):
        sigma = sample_covariance(sample_gaussian(make_chain_cov(12, 0.5), 80, seed=3))
        state = PrecisionState.identity(sigma)
        pair, alpha, gain = forward_scan(state, sigma, workers=workers)
        expected_pair, expected_alpha, expected_gain = forward_scan(state, sigma)
        assert pair == expected_pair
        assert alpha == pytest.approx(expected_alpha, rel=1e-12)
        assert gain == pytest.approx(expected_gain, rel=1e-12)

    def test_no_candidates(self, pair_sigma):
        state = PrecisionState.identity(pair_sigma)
        state.support = EdgeSet.from_pairs(2, [(0, 1)])
        with pytest.raises(NoCandidates):
            forward_scan(state, pair_sigma)

    def test_backward_on_empty_support(self):
        with pytest.raises(EmptySupport):
            backward_scan(PrecisionState.identity(np.eye(3)), np.eye(3))

    def test_single_pair_support(self, pair_sigma):
        support = EdgeSet.from_pairs(2, [(0, 1)])
        state = refit_support(pair_sigma, support, _cfg(), PrecisionState.identity(pair_sigma))
        pair, increase = backward_scan(state, pair_sigma)
        assert pair == (0, 1)
        assert increase > 0.0

    def test_backward_finds_spurious_edge(self, chain4):
        support = EdgeSet.from_pairs(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
        state = refit_support(chain4, support, _cfg(), PrecisionState.identity(chain4))
        pair, increase = backward_scan(state, chain4)
        assert pair == (0, 3)
        pairs, costs = removal_costs(state, chain4)
        assert increase == pytest.approx(min(costs))
        assert increase < 1e-8
        for other, cost in zip(pairs, costs, strict=True):
            if other != (0, 3):
                assert cost > 1e-3

    def test_zero_entry_costs_nothing(self, chain4):
        state = PrecisionState.identity(chain4)
        state.support = EdgeSet.from_pairs(4, [(0, 2)])
        _, costs = removal_costs(state, chain4)
        assert costs.tolist() == [0.0]


class TestRefitSupport:
    """Test refit_support."""

    def test_identity(self):
        state = refit_support(np.eye(3), EdgeSet(3), _cfg(), PrecisionState.identity(np.eye(3)))
        np.testing.assert_allclose(state.theta, np.eye(3))
        assert state.loss == pytest.approx(3.0)

    def test_diagonal_mle(self):
        sigma = np.diag([2.0, 4.0])
        state = refit_support(sigma, EdgeSet(2), _cfg(), PrecisionState.identity(sigma))
        np.testing.assert_allclose(state.theta, np.diag([0.5, 0.25]), atol=1e-12)

    def test_full_support_gives_inverse(self, pair_sigma):
        support = EdgeSet.from_pairs(2, [(0, 1)])
        state = refit_support(pair_sigma, support, _cfg(), PrecisionState.identity(pair_sigma))
        np.testing.assert_allclose(state.theta, invert_pd(pair_sigma), atol=1e-4)
        assert state.loss == pytest.approx(gaussian_loss(state.theta, pair_sigma))
        assert state.inverse_residual() < 1e-10

    def test_off_support_entries_are_zero(self, chain4):
        support = EdgeSet.from_pairs(4, [(0, 1), (2, 3)])
        state = refit_support(chain4, support, _cfg(), PrecisionState.identity(chain4))
        for i, j in [(0, 2), (0, 3), (1, 2), (1, 3)]:
            assert state.theta[i, j] == 0.0

    def test_warm_start_not_modified(self, chain4):
        warm = PrecisionState.identity(chain4)
        refit_support(chain4, EdgeSet.from_pairs(4, [(0, 1)]), _cfg(), warm)
        np.testing.assert_array_equal(warm.theta, np.eye(4))

    def test_cycle_cap(self, pair_sigma):
        with pytest.raises(NonConvergence):
            refit_support(
                pair_sigma,
                EdgeSet.from_pairs(2, [(0, 1)]),
                _cfg(max_refit_cycles=1),
                PrecisionState.identity(pair_sigma),
            )


class TestFitGlobalGreedy:
    """Test the full forward-backward estimator."""

    def test_identity_gives_empty_support(self):
        state = fit_global_greedy(np.eye(4), _cfg())
        assert len(state.support) == 0
        np.testing.assert_allclose(state.theta, np.eye(4))

    @pytest.mark.parametrize(
        "spec",
        [
            ModelSpec(Family.chain, 10, tau=0.5),
            ModelSpec(Family.star, 10, tau=0.4),
            ModelSpec(Family.diamond, 4, tau=0.3),
            ModelSpec(Family.grid, 9, omega=0.2),
        ],
        ids=["chain", "star", "diamond", "grid"],
    )
    def test_population_recovers_graph(self, spec):
        truth = spec.build()
        state = fit_global_greedy(truth.sigma, _cfg())
        assert state.support == truth.edges

    def test_population_estimate_is_the_precision(self):
        truth = ModelSpec(Family.chain, 6, tau=0.5).build()
        state = fit_global_greedy(truth.sigma, _cfg())
        np.testing.assert_allclose(state.theta, truth.theta, atol=1e-3)

    def test_state_is_consistent(self):
        sigma = sample_covariance(sample_gaussian(make_chain_cov(8, 0.5), 150, seed=11))
        state = fit_global_greedy(sigma, GreedyConfig.from_constant(0.5, 2, 8, 150))
        assert state.loss == pytest.approx(gaussian_loss(state.theta, sigma), abs=1e-9)
        assert state.inverse_residual() < 1e-8
        assert len(state.forward_gains) == len(state.support)
        off = np.triu(state.theta, k=1)
        rows, cols = np.nonzero(off)
        assert set(zip(rows.tolist(), cols.tolist(), strict=True)) <= set(state.support.pairs)

    def test_backward_steps_improve_on_earlier_visit(self):
        """Dropping back to a support size always beats the last loss seen at that size."""
        sigma = sample_covariance(sample_gaussian(make_chain_cov(10, 0.6), 60, seed=5))
        state = fit_global_greedy(sigma, GreedyConfig(eps=1e-3))
        last: dict[int, float] = {}
        previous_size = -1
        for size, loss in state.trace:
            if size < previous_size:
                assert loss < last[size] + 1e-9
            last[size] = loss
            previous_size = size
        assert state.trace[-1][1] <= state.trace[0][1]

    def test_forward_gains_exceed_eps(self):
        sigma = sample_covariance(sample_gaussian(make_chain_cov(8, 0.5), 100, seed=2))
        cfg = GreedyConfig(eps=0.01)
        state = fit_global_greedy(sigma, cfg)
        assert all(g > cfg.eps for g in state.gain_history)

    def test_max_active(self):
        state = fit_global_greedy(make_chain_cov(10, 0.5), _cfg(max_active=2))
        assert len(state.support) == 2

    def test_step_cap(self):
        with pytest.raises(NonConvergence):
            fit_global_greedy(make_chain_cov(10, 0.5), _cfg(max_iter=1))

    def test_workers_do_not_change_result(self):
        sigma = sample_covariance(sample_gaussian(make_chain_cov(12, 0.5), 120, seed=8))
        serial = fit_global_greedy(sigma, GreedyConfig(eps=0.02))
        threaded = fit_global_greedy(sigma, GreedyConfig(eps=0.02, workers=4))
        assert serial.support == threaded.support
        np.testing.assert_allclose(serial.theta, threaded.theta, atol=1e-12)

    def test_asymmetric_input(self):
        with pytest.raises(InvalidParameter):
            fit_global_greedy(np.array([[1.0, 0.2], [0.1, 1.0]]), _cfg())


def _outer_iterations(trace):
    """Group ``(size, loss)`` trace entries per forward step: ``[loss before, loss after, removals]``."""
    rounds = []
    for (prev_size, prev_loss), (size, loss) in zip(trace, trace[1:], strict=False):
        if size > prev_size:
            rounds.append([prev_loss, loss, 0])
        else:
            rounds[-1][1] = loss
            rounds[-1][2] += 1
    return rounds


class TestNumericalHygiene:
    """Gradient, inverse maintenance and per-iteration progress."""

    @pytest.mark.parametrize("seed", range(5))
    def test_loss_gradient_finite_difference(self, random_precision, seed):
        rng = np.random.default_rng(seed)
        p = 5
        theta = random_precision(rng, p)
        x = rng.standard_normal((40, p))
        sigma_hat = x.T @ x / 40
        w = invert_pd(theta)
        h = 1e-5
        for i in range(p):
            for j in range(i, p):
                e = np.zeros((p, p))
                e[i, j] = e[j, i] = 1.0
                numeric = (gaussian_loss(theta + h * e, sigma_hat) - gaussian_loss(theta - h * e, sigma_hat)) / (2 * h)
                analytic = sigma_hat[i, i] - w[i, i] if i == j else 2.0 * (sigma_hat[i, j] - w[i, j])
                assert numeric == pytest.approx(analytic, rel=1e-5, abs=1e-8), (i, j)

    @pytest.mark.parametrize("refactor_period", [50, 10**6])
    def test_maintained_inverse_after_thousand_updates(self, random_precision, refactor_period):
        """Blocks of ten pair updates, each undone in reverse order."""
        rng = np.random.default_rng(11)
        p = 8
        theta = random_precision(rng, p)
        state = PrecisionState(
            theta=theta.copy(), w=invert_pd(theta), support=EdgeSet(p), loss=0.0, refactor_period=refactor_period
        )
        applied = 0
        for _ in range(50):
            block = []
            for _ in range(10):
                i, j = sorted(rng.choice(p, size=2, replace=False).tolist())
                lo, hi = pd_interval_for_pair(state.w, i, j)
                alpha = float(rng.uniform(0.2 * lo, 0.2 * hi))
                state.apply_pair(i, j, alpha, 0.0)
                block.append((i, j, alpha))
            for i, j, alpha in reversed(block):
                state.apply_pair(i, j, -alpha, 0.0)
            applied += 2 * len(block)
            assert state.inverse_residual() <= 1e-6

        assert applied == 1000
        np.testing.assert_allclose(state.theta, theta, atol=1e-10)
        assert np.max(np.abs(state.w - invert_pd(state.theta))) <= 1e-6

    @pytest.mark.parametrize(
        ("family", "p", "tau", "seed"),
        [("chain", 12, 0.5, 0), ("chain", 12, 0.5, 1), ("star", 10, 0.3, 2), ("diamond", 4, 0.3, 3)],
    )
    def test_each_outer_iteration_makes_progress(self, family, p, tau, seed):
        truth = ModelSpec(Family(family), p, tau=tau).build()
        n = 150
        cfg = GreedyConfig(eps=0.5 * truth.d * math.log(p) / n)
        state = fit_global_greedy(sample_covariance(sample_gaussian(truth.sigma, n, seed=seed)), cfg)

        rounds = _outer_iterations(state.trace)
        assert rounds
        for before, after, removals in rounds:
            if removals <= 1:
                assert before - after > (1.0 - cfg.nu) * cfg.eps
        losses = [after for _, after, _ in rounds]
        assert state.loss == pytest.approx(losses[-1])
