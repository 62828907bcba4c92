"""Compound-Poisson jump process simulation and noisy observation.

Ground truth follows

    x_k = x_{k-1} + sum_{j=1..N_k} z_j + w_k

with N_k ~ Poisson(lambda*dt), z_j ~ N(jump_mean, jump_std^2) i.i.d. and
w_k ~ N(0, process_noise_std^2). The sum of N_k jump sizes is drawn in one
shot as N(N_k*jump_mean, N_k*jump_std^2), which is exact. By default the
path is pure jump (no w_k): constant apart from the jumps.

All randomness flows through an explicitly passed numpy Generator, so a
given seed reproduces a trajectory bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

GAUSSIAN = "gaussian"
TWO_SIDED_EXPONENTIAL = "two-sided-exponential"
_NOISE_KINDS = (GAUSSIAN, TWO_SIDED_EXPONENTIAL)


@dataclass(frozen=True, slots=True)
class JumpProcessParams:
    """Generative parameters of a compound-Poisson trajectory.

    lam:    jump density in jumps per second, >= 0.
    dt:     sampling interval in seconds, > 0.
    jump_mean, jump_std: Gaussian jump-size parameters (std >= 0).
    horizon: total duration T in seconds; the trajectory has
             floor(horizon/dt) + 1 samples.
    x0:     initial state.
    process_noise_std: std of the optional intra-step noise w_k
             (0 disables it, the default).
    """

    lam: float
    dt: float = 0.1
    jump_mean: float = 0.0
    jump_std: float = 1.0
    horizon: float = 100.0
    x0: float = 0.0
    process_noise_std: float = 0.0

    def __post_init__(self):
        if not (self.dt > 0.0):
            raise ValueError(f"dt must be positive, got {self.dt}")
        if not (self.horizon >= self.dt):
            raise ValueError(f"horizon must be at least dt, got {self.horizon}")
        if not (self.lam >= 0.0):
            raise ValueError(f"lam must be nonnegative, got {self.lam}")
        if not (self.jump_std >= 0.0):
            raise ValueError(f"jump_std must be nonnegative, got {self.jump_std}")
        if not (self.process_noise_std >= 0.0):
            raise ValueError(
                f"process_noise_std must be nonnegative, got {self.process_noise_std}"
            )

    @property
    def n_samples(self) -> int:
        return int(math.floor(self.horizon / self.dt)) + 1

    def label(self) -> str:
        return f"lambda={self.lam:g},mu={self.jump_mean:g},sigma={self.jump_std:g}"


@dataclass(frozen=True, slots=True)
class NoiseSpec:
    """Measurement-noise description.

    kind is one of {"gaussian", "two-sided-exponential"}; variance is the
    exact noise variance r > 0. For the two-sided exponential the
    one-sided mean m satisfies 2*m^2 = variance, so E[nu] = 0 and
    E[nu^2] = variance hold exactly.
    """

    kind: str = GAUSSIAN
    variance: float = 10.0

    def __post_init__(self):
        if self.kind not in _NOISE_KINDS:
            raise ValueError(f"noise kind must be one of {_NOISE_KINDS}, got {self.kind!r}")
        if not (self.variance > 0.0 and math.isfinite(self.variance)):
            raise ValueError(f"variance must be positive and finite, got {self.variance}")

    @property
    def exponential_mean(self) -> float:
        return math.sqrt(self.variance / 2.0)


@dataclass(frozen=True, slots=True, eq=False)
class Trajectory:
    """A simulated path: uniformly spaced times, true states, per-step jump
    counts, and (after observe) measurements plus the noise kind used."""

    times: np.ndarray
    states: np.ndarray
    jump_counts: np.ndarray
    measurements: Optional[np.ndarray] = None
    noise_kind: Optional[str] = None

    def __post_init__(self):
        n = len(self.times)
        if len(self.states) != n or len(self.jump_counts) != n:
            raise ValueError("times, states and jump_counts must have equal length")
        if self.measurements is not None and len(self.measurements) != n:
            raise ValueError("measurements length must match states")

    def __len__(self) -> int:
        return len(self.times)


def sample_jump_count(lambda_dt: float, rng: np.random.Generator) -> int:
    """Draw the number of jumps in one sampling interval, N ~ Poisson(lambda*dt)."""
    if not (lambda_dt >= 0.0) or not math.isfinite(lambda_dt):
        raise ValueError(f"lambda_dt must be nonnegative and finite, got {lambda_dt}")
    return int(rng.poisson(lambda_dt))


def simulate_jump_process(params: JumpProcessParams, rng: np.random.Generator) -> Trajectory:
    """Simulate a ground-truth trajectory; measurements are left unset.

    Steps with a zero jump count and zero process noise leave the state
    bitwise unchanged, so pure-jump paths are piecewise constant.
    """
    n = params.n_samples
    times = np.arange(n, dtype=float) * params.dt
    counts = rng.poisson(params.lam * params.dt, n - 1)
    # Sum of N i.i.d. N(mu, sigma^2) jumps is N(N*mu, N*sigma^2), drawn exactly.
    jump_sums = rng.normal(counts * params.jump_mean, np.sqrt(counts) * params.jump_std)
    increments = jump_sums
    if params.process_noise_std > 0.0:
        increments = increments + rng.normal(0.0, params.process_noise_std, n - 1)
    states = np.empty(n)
    states[0] = params.x0
    states[1:] = params.x0 + np.cumsum(increments)
    jump_counts = np.concatenate([[0], counts]).astype(np.int64)
    return Trajectory(times=times, states=states, jump_counts=jump_counts)


def observe(traj: Trajectory, spec: NoiseSpec, rng: np.random.Generator) -> Trajectory:
    """Return a copy of traj with measurements y_k = x_k + nu_k.

    Gaussian noise: nu ~ N(0, variance). Two-sided exponential:
    nu = kappa * eta with kappa uniform on {-1, +1} and eta exponential
    with mean sqrt(variance/2). The true states are never modified.
    """
    if traj.states is None or len(traj.states) == 0:
        raise ValueError("trajectory has no states to observe")
    noise = _draw_noise(len(traj), spec.kind, spec.variance, rng)
    return replace(traj, measurements=traj.states + noise, noise_kind=spec.kind)


def scale_noise_for_input_snr(
    traj: Trajectory,
    target_snr_db: float,
    kind: str,
    rng: np.random.Generator,
) -> Trajectory:
    """Contaminate traj so the realized input SNR hits target_snr_db exactly.

    A unit-scale noise sequence of the requested kind is drawn and then
    rescaled so that 10*log10(sum(x^2) / sum(nu^2)) equals the target on
    the realized sequences.
    """
    if kind not in _NOISE_KINDS:
        raise ValueError(f"noise kind must be one of {_NOISE_KINDS}, got {kind!r}")
    signal_power = float(np.sum(traj.states**2))
    if signal_power <= 0.0:
        raise ValueError("cannot target an SNR on an all-zero state sequence")
    noise = _draw_noise(len(traj), kind, 1.0, rng)
    want_power = signal_power / 10.0 ** (target_snr_db / 10.0)
    noise *= math.sqrt(want_power / float(np.sum(noise**2)))
    return replace(traj, measurements=traj.states + noise, noise_kind=kind)


def _draw_noise(n: int, kind: str, variance: float, rng: np.random.Generator) -> np.ndarray:
    if kind == GAUSSIAN:
        return rng.normal(0.0, math.sqrt(variance), n)
    eta = rng.exponential(math.sqrt(variance / 2.0), n)
    kappa = rng.integers(0, 2, n) * 2 - 1
    return kappa * eta
