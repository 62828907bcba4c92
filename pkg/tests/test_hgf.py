import math

import numpy as np
import pytest

from jumptrack.hgf import HgfKind, HgfParams, hgf_catalog_eval, hgf_eval


def test_exact_value_at_sqrt_beta_over_one():
    # exponent is exactly -1 at h = sqrt(beta/1) scaled so beta/h^2 = 1
    p = HgfParams(alpha=50.0, beta=10.0)
    assert hgf_eval(math.sqrt(10.0), p) == pytest.approx(50.0 / math.e, rel=1e-15)


def test_limit_at_zero_is_zero_when_beta_positive():
    p = HgfParams(alpha=50.0, beta=10.0)
    assert hgf_eval(0.0, p) == 0.0


def test_saturates_at_alpha_for_large_h():
    p = HgfParams(alpha=50.0, beta=10.0)
    assert abs(hgf_eval(1e9, p) - 50.0) < 1e-12 * 50.0


def test_beta_zero_returns_alpha_everywhere():
    p = HgfParams(alpha=7.5, beta=0.0)
    for h in (0.0, -3.0, 1e-300, 4e9):
        assert hgf_eval(h, p) == 7.5


def test_non_finite_h_rejected():
    p = HgfParams(alpha=1.0, beta=1.0)
    for bad in (math.inf, -math.inf, math.nan):
        with pytest.raises(ValueError):
            hgf_eval(bad, p)
        with pytest.raises(ValueError):
            hgf_catalog_eval(bad, HgfKind.GAUSS, p)


def test_param_validation():
    with pytest.raises(ValueError):
        HgfParams(alpha=0.0, beta=1.0)
    with pytest.raises(ValueError):
        HgfParams(alpha=1.0, beta=-0.5)
    with pytest.raises(ValueError):
        HgfParams(alpha=1.0, beta=1.0, rho=1.5)


def test_bounded_symmetric_monotone():
    p = HgfParams(alpha=50.0, beta=10.0)
    rng = np.random.default_rng(42)
    hs = np.sort(np.abs(rng.uniform(-50, 50, 500)))
    vals = [hgf_eval(h, p) for h in hs]
    assert all(0.0 <= v <= 50.0 for v in vals)
    # even symmetry
    for h in hs[::25]:
        assert hgf_eval(h, p) == hgf_eval(-h, p)
    # nondecreasing in |h|, strict once both values are in the normal range
    for lo, hi in zip(vals, vals[1:]):
        assert lo <= hi


def test_no_nan_or_inf_for_extreme_inputs():
    p = HgfParams(alpha=50.0, beta=10.0)
    for h in (5e-324, 1e-310, 1e-160, 1e-9, 1e300, -1e300):
        v = hgf_eval(h, p)
        assert math.isfinite(v) and 0.0 <= v <= 50.0


def test_underflow_region_returns_exact_zero():
    # beta/h^2 far beyond the normal exponent range must give exactly 0
    p = HgfParams(alpha=50.0, beta=10.0)
    assert hgf_eval(0.05, p) == 0.0


def test_catalog_values():
    p1 = HgfParams(alpha=1.0, beta=1.0)
    assert hgf_catalog_eval(0.0, HgfKind.LOGISTIC, p1) == pytest.approx(0.5)
    assert hgf_catalog_eval(0.0, HgfKind.GAUSS, p1) == pytest.approx(1.0)
    assert hgf_catalog_eval(0.0, HgfKind.ONE_PLUS_GAUSS, p1) == pytest.approx(2.0)
    p2 = HgfParams(alpha=2.0, beta=1.0)
    assert hgf_catalog_eval(-3.0, HgfKind.ABS, p2) == pytest.approx(6.0)


def test_catalog_finite_and_nonnegative():
    p = HgfParams(alpha=3.0, beta=2.0)
    rng = np.random.default_rng(7)
    for kind in HgfKind:
        for h in rng.uniform(-800, 800, 200):
            v = hgf_catalog_eval(float(h), kind, p)
            assert math.isfinite(v) and v >= 0.0


def test_catalog_exp_inverse_square_delegates():
    p = HgfParams(alpha=50.0, beta=10.0)
    for h in (-2.0, 0.0, 3.7):
        assert hgf_catalog_eval(h, HgfKind.EXP_INVERSE_SQUARE, p) == hgf_eval(h, p)
