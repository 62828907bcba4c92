"""Scoring: mean square error, SNR and SNR improvement in dB."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

# Cap on the reported SNR improvement so perfect reconstruction stays finite.
SNR_IMPROVEMENT_CAP_DB = 300.0


@dataclass(frozen=True, slots=True)
class ScoreReport:
    """One filter's scores on one trajectory. snr_improvement_db is exactly
    output_snr_db - input_snr_db; capped is True when the improvement hit
    the +300 dB perfect-reconstruction cap."""

    mse: float
    input_snr_db: float
    output_snr_db: float
    snr_improvement_db: float
    capped: bool = False


def mse(estimates: Sequence[float], truth: Sequence[float]) -> float:
    """Mean of squared differences between two equal-length sequences."""
    est = np.asarray(estimates, dtype=float)
    tru = np.asarray(truth, dtype=float)
    if est.shape != tru.shape or est.ndim != 1 or len(est) == 0:
        raise ValueError(
            f"estimates and truth must be nonempty sequences of equal length, "
            f"got {est.shape} vs {tru.shape}"
        )
    if not (np.isfinite(est).all() and np.isfinite(tru).all()):
        raise ValueError("mse inputs must be finite")
    return float(np.mean((est - tru) ** 2))


def snr_db(signal: Sequence[float], reference_error: Sequence[float]) -> float:
    """10*log10(sum(signal^2) / sum(error^2)).

    Input SNR uses error = y - x, output SNR uses error = x_hat - x.
    Zero-power signal or error is an error here; callers wanting the
    perfect-reconstruction cap should use score_report.
    """
    sig = np.asarray(signal, dtype=float)
    err = np.asarray(reference_error, dtype=float)
    sig_pow = float(np.sum(sig**2))
    err_pow = float(np.sum(err**2))
    if sig_pow <= 0.0:
        raise ValueError("signal power is zero; SNR undefined")
    if err_pow <= 0.0:
        raise ValueError("error power is zero; SNR undefined (perfect reconstruction)")
    return 10.0 * math.log10(sig_pow / err_pow)


def snr_improvement_db(
    truth: Sequence[float],
    measurements: Sequence[float],
    estimates: Sequence[float],
) -> float:
    """Output SNR minus input SNR in dB; +300 dB when estimates == truth."""
    return score_report(truth, measurements, estimates).snr_improvement_db


def score_report(
    truth: Sequence[float],
    measurements: Sequence[float],
    estimates: Sequence[float],
    burn_in: int = 0,
) -> ScoreReport:
    """Full scoring of one run. burn_in drops the first samples from every
    sequence before scoring (default keeps everything)."""
    tru = np.asarray(truth, dtype=float)[burn_in:]
    meas = np.asarray(measurements, dtype=float)[burn_in:]
    est = np.asarray(estimates, dtype=float)[burn_in:]
    if not (len(tru) == len(meas) == len(est)) or len(tru) == 0:
        raise ValueError("truth, measurements and estimates must share a nonzero length")
    input_snr = snr_db(tru, meas - tru)
    err_as_float = mse(est, tru)
    out_pow = float(np.sum((est - tru) ** 2))
    if out_pow <= 0.0:
        return ScoreReport(
            mse=err_as_float,
            input_snr_db=input_snr,
            output_snr_db=input_snr + SNR_IMPROVEMENT_CAP_DB,
            snr_improvement_db=SNR_IMPROVEMENT_CAP_DB,
            capped=True,
        )
    output_snr = snr_db(tru, est - tru)
    improvement = output_snr - input_snr
    if improvement > SNR_IMPROVEMENT_CAP_DB:
        return ScoreReport(
            mse=err_as_float,
            input_snr_db=input_snr,
            output_snr_db=input_snr + SNR_IMPROVEMENT_CAP_DB,
            snr_improvement_db=SNR_IMPROVEMENT_CAP_DB,
            capped=True,
        )
    return ScoreReport(
        mse=err_as_float,
        input_snr_db=input_snr,
        output_snr_db=output_snr,
        snr_improvement_db=improvement,
        capped=False,
    )
