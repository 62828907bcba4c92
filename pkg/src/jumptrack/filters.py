"""Scalar recursive estimators for jump-process tracking.

Three filters share the same scalar Kalman update (state transition and
measurement maps are both identity):

    predict   x- = x_hat,  p- = p + q
    gain      K  = p- / (p- + r)
    update    x_hat' = x- + K*(y - x-),  p' = (1 - K)*p-

They differ only in how the process-noise variance q is chosen each step:

* kf_step:    constant q.
* garch_step: q is the GARCH(1,1) conditional variance, driven by the
  previous innovation: sigma2_{k+1} = a0 + a1*e_k^2 + b1*sigma2_k. The
  variance applied at step k is known before y_k arrives.
* nnh_step:   q = f(h + d) where f is the exponential HGF and d estimates
  the current state increment. The increment the HGF asks for is produced
  by the very update it controls, so the step solves the scalar
  fixed-point equation

      sigma2 = f(h + K(sigma2)*eps),   K(s) = (p + s)/(p + s + r)

  by iterating from the raw-innovation hypothesis f(h + eps) downward.
  On quiet data the iteration collapses to ~0 (the filter coasts); a
  genuine jump keeps it near the ceiling alpha (the filter re-acquires).
  Afterwards the explanatory variable integrates the filtered increment
  with persistence rho: h' = rho*h + (x_hat' - x_hat).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .hgf import HgfParams, hgf_eval

_FIXED_POINT_MAX_ITER = 32


@dataclass(frozen=True, slots=True)
class KfConfig:
    """Constant-Q Kalman filter configuration.

    x0_hat=None means "initialize from the first measurement";
    p0=None means "initialize the covariance at r".
    """

    q: float = 5.0
    r: float = 10.0
    x0_hat: Optional[float] = None
    p0: Optional[float] = None

    def __post_init__(self):
        if not (self.q >= 0.0 and math.isfinite(self.q)):
            raise ValueError(f"q must be nonnegative and finite, got {self.q}")
        if not (self.r > 0.0 and math.isfinite(self.r)):
            raise ValueError(f"r must be positive and finite, got {self.r}")
        if self.p0 is not None and not (self.p0 >= 0.0):
            raise ValueError(f"p0 must be nonnegative, got {self.p0}")


@dataclass(frozen=True, slots=True)
class GarchConfig:
    """GARCH(1,1)-adaptive Kalman filter configuration.

    sigma2_0=None initializes the conditional variance at its stationary
    value a0/(1 - a1 - b1).
    """

    a0: float = 0.5
    a1: float = 0.3
    b1: float = 0.6
    r: float = 10.0
    x0_hat: Optional[float] = None
    p0: Optional[float] = None
    sigma2_0: Optional[float] = None

    def __post_init__(self):
        if not (self.a0 > 0.0):
            raise ValueError(f"a0 must be positive, got {self.a0}")
        if self.a1 < 0.0 or self.b1 < 0.0:
            raise ValueError("a1 and b1 must be nonnegative")
        if not (self.a1 + self.b1 < 1.0):
            raise ValueError(
                f"a1 + b1 must be < 1 for covariance stationarity, got {self.a1 + self.b1}"
            )
        if not (self.r > 0.0 and math.isfinite(self.r)):
            raise ValueError(f"r must be positive and finite, got {self.r}")
        if self.p0 is not None and not (self.p0 >= 0.0):
            raise ValueError(f"p0 must be nonnegative, got {self.p0}")
        if self.sigma2_0 is not None and not (self.sigma2_0 > 0.0):
            raise ValueError(f"sigma2_0 must be positive, got {self.sigma2_0}")

    @property
    def stationary_variance(self) -> float:
        return self.a0 / (1.0 - self.a1 - self.b1)


@dataclass(frozen=True, slots=True)
class NnhConfig:
    """HGF-adaptive (NNH) Kalman filter configuration.

    sigma2_1 is the process-noise variance of the very first step, before
    any innovation exists to feed the HGF.
    """

    hgf: HgfParams = HgfParams(alpha=50.0, beta=10.0)
    r: float = 10.0
    x0_hat: Optional[float] = None
    p0: Optional[float] = None
    h0: float = 0.0
    sigma2_1: float = 1e-4

    def __post_init__(self):
        if not (self.r > 0.0 and math.isfinite(self.r)):
            raise ValueError(f"r must be positive and finite, got {self.r}")
        if self.p0 is not None and not (self.p0 >= 0.0):
            raise ValueError(f"p0 must be nonnegative, got {self.p0}")
        if not (self.sigma2_1 > 0.0):
            raise ValueError(f"sigma2_1 must be positive, got {self.sigma2_1}")
        if not math.isfinite(self.h0):
            raise ValueError(f"h0 must be finite, got {self.h0}")


@dataclass(frozen=True, slots=True)
class FilterState:
    """Filter internals after one step.

    sigma2 is the process-noise variance applied in the step that
    produced this state, except for the GARCH filter where it is the
    conditional variance carried forward to the next step (the GARCH
    recursion state).
    """

    x_hat: float
    p: float
    sigma2: float
    k_gain: float = 0.0
    h: float = 0.0


@dataclass(frozen=True, slots=True, eq=False)
class FilterTrace:
    """Per-step series produced by run_filter. h is None except for NNH."""

    x_hat: np.ndarray
    p: np.ndarray
    sigma2: np.ndarray
    k_gain: np.ndarray
    h: Optional[np.ndarray] = None

    def __len__(self) -> int:
        return len(self.x_hat)


def _kalman_update(x_hat: float, p: float, y: float, q: float, r: float):
    p_minus = p + q
    k = p_minus / (p_minus + r)
    x_new = x_hat + k * (y - x_hat)
    p_new = (1.0 - k) * p_minus
    return x_new, p_new, k


def kf_step(state: FilterState, y: float, cfg: KfConfig) -> FilterState:
    """One constant-Q Kalman step."""
    x_new, p_new, k = _kalman_update(state.x_hat, state.p, y, cfg.q, cfg.r)
    return FilterState(x_hat=x_new, p=p_new, sigma2=cfg.q, k_gain=k, h=state.h)


def garch_step(state: FilterState, y: float, cfg: GarchConfig) -> FilterState:
    """One GARCH(1,1)-adaptive Kalman step.

    state.sigma2 holds the conditional variance for this step; the
    returned state carries the variance for the next one, updated from
    this step's innovation.
    """
    sigma2 = state.sigma2
    e = y - state.x_hat
    x_new, p_new, k = _kalman_update(state.x_hat, state.p, y, sigma2, cfg.r)
    sigma2_next = cfg.a0 + cfg.a1 * e * e + cfg.b1 * sigma2
    return FilterState(x_hat=x_new, p=p_new, sigma2=sigma2_next, k_gain=k, h=state.h)


def nnh_sigma2(h: float, eps: float, p: float, cfg: NnhConfig) -> float:
    """Solve the per-step volatility fixed point sigma2 = f(h + K(sigma2)*eps).

    Starts from the raw-innovation hypothesis f(h + eps) and iterates the
    gain-shrunken increment until the value is self-consistent. The
    result is in [0, alpha] like the HGF itself.
    """
    params = cfg.hgf
    sigma2 = hgf_eval(h + eps, params)
    tol = 1e-13 * params.alpha
    for _ in range(_FIXED_POINT_MAX_ITER):
        k_t = (p + sigma2) / (p + sigma2 + cfg.r)
        sigma2_next = hgf_eval(h + k_t * eps, params)
        if abs(sigma2_next - sigma2) <= tol:
            return sigma2_next
        sigma2 = sigma2_next
    return sigma2


def nnh_step(state: FilterState, y: float, cfg: NnhConfig) -> FilterState:
    """One NNH-adaptive Kalman step.

    The innovation eps = y - x_hat stands in for the unobservable state
    increment when evaluating the HGF; the explanatory variable h then
    advances with the filtered increment, damped by rho.
    """
    eps = y - state.x_hat
    sigma2 = nnh_sigma2(state.h, eps, state.p, cfg)
    x_new, p_new, k = _kalman_update(state.x_hat, state.p, y, sigma2, cfg.r)
    h_new = cfg.hgf.rho * state.h + (x_new - state.x_hat)
    return FilterState(x_hat=x_new, p=p_new, sigma2=sigma2, k_gain=k, h=h_new)


def _nnh_first_step(state: FilterState, y: float, cfg: NnhConfig) -> FilterState:
    # No innovation history yet: start from the configured small variance.
    # With beta == 0 the HGF is the constant alpha, so the startup value
    # is bypassed and the constant-variance degeneration holds from step 1.
    q1 = cfg.sigma2_1 if cfg.hgf.beta > 0.0 else cfg.hgf.alpha
    x_new, p_new, k = _kalman_update(state.x_hat, state.p, y, q1, cfg.r)
    h_new = cfg.hgf.rho * state.h + (x_new - state.x_hat)
    return FilterState(x_hat=x_new, p=p_new, sigma2=q1, k_gain=k, h=h_new)


FilterConfig = Union[KfConfig, GarchConfig, NnhConfig]

_KIND_FOR_CONFIG = {KfConfig: "kf", GarchConfig: "garch", NnhConfig: "nnh"}


def run_filter(kind: str, cfg: FilterConfig, measurements: Sequence[float]) -> FilterTrace:
    """Fold the per-step filter over a measurement sequence.

    kind is one of {"kf", "garch", "nnh"} and must match the config type.
    The recorded sigma2 series holds the process-noise variance actually
    applied at each step. Non-finite measurements raise with the index of
    the offender.
    """
    if kind not in ("kf", "garch", "nnh"):
        raise ValueError(f"unknown filter kind: {kind!r}")
    if _KIND_FOR_CONFIG.get(type(cfg)) != kind:
        raise TypeError(f"config type {type(cfg).__name__} does not match kind {kind!r}")
    y = np.asarray(measurements, dtype=float)
    if y.ndim != 1 or len(y) == 0:
        raise ValueError("measurements must be a nonempty 1-d sequence")
    bad = np.flatnonzero(~np.isfinite(y))
    if len(bad):
        raise ValueError(f"non-finite measurement at index {bad[0]}")

    n = len(y)
    x0 = cfg.x0_hat if cfg.x0_hat is not None else float(y[0])
    p0 = cfg.p0 if cfg.p0 is not None else cfg.r

    xs = np.empty(n)
    ps = np.empty(n)
    s2s = np.empty(n)
    ks = np.empty(n)
    hs = np.empty(n) if kind == "nnh" else None

    if kind == "kf":
        state = FilterState(x_hat=x0, p=p0, sigma2=cfg.q)
        for i in range(n):
            state = kf_step(state, y[i], cfg)
            xs[i] = state.x_hat
            ps[i] = state.p
            s2s[i] = cfg.q
            ks[i] = state.k_gain
    elif kind == "garch":
        s20 = cfg.sigma2_0 if cfg.sigma2_0 is not None else cfg.stationary_variance
        state = FilterState(x_hat=x0, p=p0, sigma2=s20)
        for i in range(n):
            applied = state.sigma2
            state = garch_step(state, y[i], cfg)
            xs[i] = state.x_hat
            ps[i] = state.p
            s2s[i] = applied
            ks[i] = state.k_gain
    else:
        state = FilterState(x_hat=x0, p=p0, sigma2=cfg.sigma2_1, h=cfg.h0)
        state = _nnh_first_step(state, y[0], cfg)
        xs[0], ps[0], s2s[0], ks[0], hs[0] = (
            state.x_hat, state.p, state.sigma2, state.k_gain, state.h,
        )
        for i in range(1, n):
            state = nnh_step(state, y[i], cfg)
            xs[i] = state.x_hat
            ps[i] = state.p
            s2s[i] = state.sigma2
            ks[i] = state.k_gain
            hs[i] = state.h

    return FilterTrace(x_hat=xs, p=ps, sigma2=s2s, k_gain=ks, h=hs)
