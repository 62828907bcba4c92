"""jumptrack: compound-Poisson jump simulation, adaptive Kalman tracking
and Monte Carlo benchmarking."""

from .bench import (
    DEFAULT_SCENARIOS,
    DEFAULT_SNR_SCENARIO,
    ExperimentConfig,
    MseTable,
    SnrCurve,
    export_trace,
    load_config,
    read_results,
    read_trajectory_csv,
    run_mse_benchmark,
    run_snr_sweep,
    trial_rng,
    write_results,
    write_trajectory_csv,
)
from .filters import (
    FilterState,
    FilterTrace,
    GarchConfig,
    KfConfig,
    NnhConfig,
    garch_step,
    kf_step,
    nnh_sigma2,
    nnh_step,
    run_filter,
)
from .hgf import HgfKind, HgfParams, hgf_catalog_eval, hgf_eval
from .metrics import ScoreReport, mse, score_report, snr_db, snr_improvement_db
from .simulate import (
    JumpProcessParams,
    NoiseSpec,
    Trajectory,
    observe,
    sample_jump_count,
    scale_noise_for_input_snr,
    simulate_jump_process,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_SCENARIOS",
    "DEFAULT_SNR_SCENARIO",
    "ExperimentConfig",
    "FilterState",
    "FilterTrace",
    "GarchConfig",
    "HgfKind",
    "HgfParams",
    "JumpProcessParams",
    "KfConfig",
    "MseTable",
    "NnhConfig",
    "NoiseSpec",
    "ScoreReport",
    "SnrCurve",
    "Trajectory",
    "export_trace",
    "garch_step",
    "hgf_catalog_eval",
    "hgf_eval",
    "kf_step",
    "load_config",
    "mse",
    "nnh_sigma2",
    "nnh_step",
    "observe",
    "read_results",
    "read_trajectory_csv",
    "run_filter",
    "run_mse_benchmark",
    "run_snr_sweep",
    "sample_jump_count",
    "scale_noise_for_input_snr",
    "score_report",
    "simulate_jump_process",
    "snr_db",
    "snr_improvement_db",
    "trial_rng",
    "write_results",
    "write_trajectory_csv",
]
