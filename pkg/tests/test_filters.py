import math

import numpy as np
import pytest

from jumptrack.filters import (
    FilterState,
    GarchConfig,
    KfConfig,
    NnhConfig,
    garch_step,
    kf_step,
    nnh_step,
    run_filter,
)
from jumptrack.hgf import HgfParams


def _random_measurements(seed, n=1000, scale=10.0):
    rng = np.random.default_rng(seed)
    return rng.normal(0.0, scale, n)


class TestKfStep:
    def test_zero_prior_uncertainty_ignores_measurement(self):
        cfg = KfConfig(q=0.0, r=10.0)
        state = FilterState(x_hat=2.0, p=0.0, sigma2=0.0)
        out = kf_step(state, 1e6, cfg)
        assert out.k_gain == 0.0
        assert out.x_hat == 2.0

    def test_equal_variances_move_halfway(self):
        cfg = KfConfig(q=4.0, r=10.0)
        state = FilterState(x_hat=0.0, p=6.0, sigma2=4.0)  # p- = 10 = r
        out = kf_step(state, 8.0, cfg)
        assert out.k_gain == pytest.approx(0.5)
        assert out.x_hat == pytest.approx(4.0)

    def test_uninformative_measurement(self):
        cfg = KfConfig(q=0.5, r=1e12)
        state = FilterState(x_hat=1.0, p=0.5, sigma2=0.5)  # p- = 1
        out = kf_step(state, 1000.0, cfg)
        assert out.k_gain == pytest.approx(1e-12, rel=1e-3)
        assert out.x_hat == pytest.approx(1.0, abs=1e-6)


class TestGarchStep:
    def test_degenerate_recursion_equals_constant_q(self):
        q = 3.0
        y = _random_measurements(0)
        kf_trace = run_filter("kf", KfConfig(q=q, r=10.0), y)
        g_trace = run_filter("garch", GarchConfig(a0=q, a1=0.0, b1=0.0, r=10.0), y)
        for a, b in ((kf_trace.x_hat, g_trace.x_hat), (kf_trace.p, g_trace.p),
                     (kf_trace.sigma2, g_trace.sigma2), (kf_trace.k_gain, g_trace.k_gain)):
            assert np.array_equal(a, b)

    def test_zero_innovation_fixed_point(self):
        # constant measurements equal to the estimate drive e = 0, so the
        # conditional variance decays geometrically to a0/(1-b1)
        cfg = GarchConfig(a0=0.5, a1=0.3, b1=0.6, r=10.0, x0_hat=4.0, sigma2_0=9.0)
        state = FilterState(x_hat=4.0, p=0.0, sigma2=9.0)
        values = []
        for _ in range(60):
            state = garch_step(state, 4.0, cfg)
            values.append(state.sigma2)
        target = 0.5 / (1 - 0.6)
        assert values[-1] == pytest.approx(target, rel=1e-9)
        # geometric approach: error shrinks by b1 each step
        errs = [abs(v - target) for v in values[:10]]
        for a, b in zip(errs, errs[1:]):
            assert b == pytest.approx(0.6 * a, rel=1e-9)

    def test_constant_squared_innovation_fixed_point(self):
        # iterate the recursion with e^2 = 5; the fixed point is
        # (a0 + a1*5)/(1 - b1) = 5 exactly for the default coefficients
        cfg = GarchConfig(a0=0.5, a1=0.3, b1=0.6, r=10.0)
        s2 = 1.0
        for _ in range(200):
            state = FilterState(x_hat=0.0, p=1.0, sigma2=s2)
            s2 = garch_step(state, math.sqrt(5.0), cfg).sigma2
        assert s2 == pytest.approx(5.0, rel=1e-12)

    def test_stationarity_validation(self):
        with pytest.raises(ValueError):
            GarchConfig(a0=0.5, a1=0.5, b1=0.5)
        with pytest.raises(ValueError):
            GarchConfig(a0=0.0)


class TestNnhStep:
    def test_beta_zero_collapses_to_constant_q(self):
        q = 7.0
        cfg = NnhConfig(hgf=HgfParams(alpha=q, beta=0.0), r=10.0)
        kf_cfg = KfConfig(q=q, r=10.0)
        state_n = FilterState(x_hat=1.0, p=3.0, sigma2=q, h=0.4)
        state_k = FilterState(x_hat=1.0, p=3.0, sigma2=q)
        for y in _random_measurements(1, n=50):
            state_n = nnh_step(state_n, y, cfg)
            state_k = kf_step(state_k, y, kf_cfg)
            assert state_n.x_hat == state_k.x_hat
            assert state_n.p == state_k.p
            assert state_n.sigma2 == q

    def test_zero_innovation_at_origin_freezes(self):
        cfg = NnhConfig(hgf=HgfParams(alpha=50.0, beta=10.0), r=10.0)
        state = FilterState(x_hat=2.0, p=4.0, sigma2=1.0, h=0.0)
        out = nnh_step(state, 2.0, cfg)
        assert out.sigma2 == 0.0
        assert out.p < state.p  # pure damping: p' = (1-K) p
        assert out.x_hat == 2.0

    def test_large_jump_saturates_volatility(self):
        cfg = NnhConfig(hgf=HgfParams(alpha=50.0, beta=10.0), r=10.0)
        state = FilterState(x_hat=0.0, p=2.0, sigma2=0.0, h=0.0)
        out = nnh_step(state, 100.0, cfg)
        assert out.sigma2 == pytest.approx(50.0, rel=0.01)
        expected_gain = (2.0 + out.sigma2) / (2.0 + out.sigma2 + 10.0)
        assert out.k_gain == pytest.approx(expected_gain)

    def test_explanatory_variable_tracks_filtered_increment(self):
        rho = 0.5
        cfg = NnhConfig(hgf=HgfParams(alpha=50.0, beta=10.0, rho=rho), r=10.0)
        state = FilterState(x_hat=0.0, p=5.0, sigma2=0.0, h=1.0)
        out = nnh_step(state, 30.0, cfg)
        assert out.h == pytest.approx(rho * 1.0 + (out.x_hat - 0.0))


class TestRunFilter:
    def test_single_measurement_convex(self):
        y = [3.0]
        for kind, cfg in (("kf", KfConfig(x0_hat=1.0)),
                          ("garch", GarchConfig(x0_hat=1.0)),
                          ("nnh", NnhConfig(x0_hat=1.0))):
            trace = run_filter(kind, cfg, y)
            assert len(trace) == 1
            assert 1.0 <= trace.x_hat[0] <= 3.0

    def test_constant_measurements_converge(self):
        y = np.full(400, 5.0)
        trace = run_filter("nnh", NnhConfig(x0_hat=0.0), y)
        assert trace.x_hat[-1] == pytest.approx(5.0, abs=1e-3)
        assert np.all((trace.k_gain > 0.0) & (trace.k_gain < 1.0))
        assert trace.sigma2[-1] <= trace.sigma2[1]

    def test_deterministic(self):
        y = _random_measurements(2)
        a = run_filter("nnh", NnhConfig(), y)
        b = run_filter("nnh", NnhConfig(), y)
        assert np.array_equal(a.x_hat, b.x_hat)
        assert np.array_equal(a.sigma2, b.sigma2)

    def test_non_finite_measurement_reports_index(self):
        y = np.array([1.0, 2.0, np.nan, 4.0])
        with pytest.raises(ValueError, match="index 2"):
            run_filter("kf", KfConfig(), y)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            run_filter("kf", KfConfig(), [])

    def test_kind_config_mismatch(self):
        with pytest.raises(TypeError):
            run_filter("kf", NnhConfig(), [1.0])
        with pytest.raises(ValueError):
            run_filter("ekf", KfConfig(), [1.0])

    def test_trace_lengths_and_h_presence(self):
        y = _random_measurements(3, n=200)
        for kind, cfg in (("kf", KfConfig()), ("garch", GarchConfig()), ("nnh", NnhConfig())):
            trace = run_filter(kind, cfg, y)
            assert len(trace.x_hat) == len(trace.p) == len(trace.sigma2) == len(trace.k_gain) == 200
            if kind == "nnh":
                assert trace.h is not None and len(trace.h) == 200
            else:
                assert trace.h is None

    def test_gain_and_covariance_invariants(self):
        y = _random_measurements(4, n=500, scale=20.0)
        for kind, cfg in (("kf", KfConfig()), ("garch", GarchConfig()), ("nnh", NnhConfig())):
            trace = run_filter(kind, cfg, y)
            assert np.all(trace.k_gain >= 0.0) and np.all(trace.k_gain <= 1.0)
            assert np.all(trace.p >= 0.0)
            # update strictly shrinks covariance relative to the prediction
            p_prev = np.concatenate([[cfg.r], trace.p[:-1]])
            p_minus = p_prev + trace.sigma2
            positive = p_minus > 0
            assert np.all(trace.p[positive] < p_minus[positive])

    def test_nnh_volatility_bounded_by_alpha(self):
        y = _random_measurements(5, n=500, scale=30.0)
        trace = run_filter("nnh", NnhConfig(hgf=HgfParams(alpha=50.0, beta=10.0)), y)
        assert np.all(trace.sigma2 >= 0.0)
        assert np.all(trace.sigma2 <= 50.0)

    def test_first_step_uses_startup_variance(self):
        cfg = NnhConfig(x0_hat=0.0, p0=10.0, sigma2_1=1e-4)
        trace = run_filter("nnh", cfg, [5.0, 5.0])
        assert trace.sigma2[0] == 1e-4


class TestEquivalences:
    """Degenerate parameterizations must reproduce the plain Kalman filter."""

    @pytest.mark.parametrize("seed", range(5))
    def test_nnh_beta_zero_matches_kf(self, seed):
        q = 5.0
        y = _random_measurements(seed)
        kf_t = run_filter("kf", KfConfig(q=q, r=10.0), y)
        nnh_t = run_filter("nnh", NnhConfig(hgf=HgfParams(alpha=q, beta=0.0), r=10.0), y)
        assert np.array_equal(kf_t.x_hat, nnh_t.x_hat)
        assert np.array_equal(kf_t.p, nnh_t.p)
        assert np.array_equal(kf_t.sigma2, nnh_t.sigma2)
        assert np.array_equal(kf_t.k_gain, nnh_t.k_gain)

    @pytest.mark.parametrize("seed", range(5))
    def test_garch_degenerate_matches_kf(self, seed):
        q = 5.0
        y = _random_measurements(seed + 100)
        kf_t = run_filter("kf", KfConfig(q=q, r=10.0), y)
        g_t = run_filter("garch", GarchConfig(a0=q, a1=0.0, b1=0.0, r=10.0), y)
        assert np.array_equal(kf_t.x_hat, g_t.x_hat)
        assert np.array_equal(kf_t.p, g_t.p)
        assert np.array_equal(kf_t.sigma2, g_t.sigma2)
        assert np.array_equal(kf_t.k_gain, g_t.k_gain)
