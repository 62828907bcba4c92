"""Monte Carlo benchmark orchestration and result persistence.

Experiments are fully determined by an ExperimentConfig plus its
master_seed: every (scenario, trial) pair derives an independent RNG
stream from numpy's SeedSequence, so serial and parallel execution, and
repeated runs, produce byte-identical result files.

CSV files use comma separators, '.' decimal points, a header row, LF
line endings and 17 significant digits for exact float roundtrips.
"""

from __future__ import annotations

import csv
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Dict, Optional, Sequence, Tuple, Union

import numpy as np

from .filters import FilterTrace, GarchConfig, KfConfig, NnhConfig, run_filter
from .hgf import HgfParams
from .metrics import mse, score_report
from .simulate import (
    JumpProcessParams,
    NoiseSpec,
    Trajectory,
    observe,
    scale_noise_for_input_snr,
    simulate_jump_process,
)

DEFAULT_MASTER_SEED = 12345

# Benchmark scenario grid: jump density, jump-size mean and std.
DEFAULT_SCENARIOS: Tuple[JumpProcessParams, ...] = (
    JumpProcessParams(lam=1.0, jump_mean=0.0, jump_std=10.0),
    JumpProcessParams(lam=1.0, jump_mean=3.0, jump_std=10.0),
    JumpProcessParams(lam=2.0, jump_mean=0.0, jump_std=8.0),
    JumpProcessParams(lam=6.0, jump_mean=2.0, jump_std=math.sqrt(20.0)),
)

# Scenario used for the SNR-improvement sweep: sparse large jumps whose
# per-step increment variance sits near the HGF ceiling.
DEFAULT_SNR_SCENARIO = JumpProcessParams(lam=2.0, jump_mean=0.0, jump_std=15.0)

DEFAULT_SNR_SWEEP: Tuple[float, ...] = (-5.0, 0.0, 5.0, 10.0, 15.0)

# Stream namespaces so the MSE benchmark and the SNR sweep never share draws.
_STREAM_MSE = 0
_STREAM_SNR = 1


@dataclass(frozen=True, slots=True)
class ExperimentConfig:
    """Everything a benchmark run needs; all fields have usable defaults."""

    master_seed: int = DEFAULT_MASTER_SEED
    trials: int = 200
    scenarios: Tuple[JumpProcessParams, ...] = DEFAULT_SCENARIOS
    noise: NoiseSpec = NoiseSpec(kind="gaussian", variance=10.0)
    kf: KfConfig = KfConfig()
    garch: GarchConfig = GarchConfig()
    nnh: NnhConfig = NnhConfig()
    snr_sweep: Tuple[float, ...] = DEFAULT_SNR_SWEEP
    snr_scenario: JumpProcessParams = DEFAULT_SNR_SCENARIO
    workers: int = 1

    def __post_init__(self):
        if self.master_seed < 0:
            raise ValueError(f"master_seed must be a nonnegative integer, got {self.master_seed}")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if len(self.scenarios) == 0:
            raise ValueError("scenarios must be nonempty")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")


@dataclass(frozen=True)
class MseTable:
    """Per-scenario mean MSE of each filter plus standard errors."""

    labels: Tuple[str, ...]
    kf_mse: Tuple[float, ...]
    kf_se: Tuple[float, ...]
    garch_mse: Tuple[float, ...]
    garch_se: Tuple[float, ...]
    nnh_mse: Tuple[float, ...]
    nnh_se: Tuple[float, ...]
    trials: int = 0

    CSV_HEADER = ("scenario", "kf_mse", "kf_se", "garch_mse", "garch_se", "nnh_mse", "nnh_se")


@dataclass(frozen=True)
class SnrCurve:
    """Mean SNR improvement per filter at each input-SNR target."""

    input_snr_db: Tuple[float, ...]
    kf_improvement_db: Tuple[float, ...]
    garch_improvement_db: Tuple[float, ...]
    nnh_improvement_db: Tuple[float, ...]
    trials: int = 0

    CSV_HEADER = ("input_snr_db", "kf_improvement_db", "garch_improvement_db", "nnh_improvement_db")


def trial_rng(master_seed: int, stream: int, index: int, trial: int) -> np.random.Generator:
    """Independent generator for one (stream, scenario index, trial) cell."""
    return np.random.default_rng(np.random.SeedSequence([master_seed, stream, index, trial]))


def _mse_trial(args) -> Tuple[float, float, float]:
    master_seed, scen_idx, trial_idx, scenario, noise, kf_cfg, garch_cfg, nnh_cfg = args
    rng = trial_rng(master_seed, _STREAM_MSE, scen_idx, trial_idx)
    traj = observe(simulate_jump_process(scenario, rng), noise, rng)
    y = traj.measurements
    truth = traj.states
    return (
        mse(run_filter("kf", kf_cfg, y).x_hat, truth),
        mse(run_filter("garch", garch_cfg, y).x_hat, truth),
        mse(run_filter("nnh", nnh_cfg, y).x_hat, truth),
    )


def _snr_trial(args) -> Tuple[float, float, float]:
    master_seed, point_idx, trial_idx, scenario, target_db, kind, kf_cfg, garch_cfg, nnh_cfg = args
    rng = trial_rng(master_seed, _STREAM_SNR, point_idx, trial_idx)
    traj = simulate_jump_process(scenario, rng)
    traj = scale_noise_for_input_snr(traj, target_db, kind, rng)
    y = traj.measurements
    truth = traj.states
    realized_r = float(np.mean((y - truth) ** 2))
    out = []
    for knd, cfg in (("kf", kf_cfg), ("garch", garch_cfg), ("nnh", nnh_cfg)):
        cfg_r = _with_r(cfg, realized_r)
        est = run_filter(knd, cfg_r, y).x_hat
        out.append(score_report(truth, y, est).snr_improvement_db)
    return tuple(out)


def _with_r(cfg, r: float):
    """Copy of a filter config with its measurement-noise variance replaced."""
    if isinstance(cfg, KfConfig):
        return KfConfig(q=cfg.q, r=r, x0_hat=cfg.x0_hat, p0=cfg.p0)
    if isinstance(cfg, GarchConfig):
        return GarchConfig(a0=cfg.a0, a1=cfg.a1, b1=cfg.b1, r=r,
                           x0_hat=cfg.x0_hat, p0=cfg.p0, sigma2_0=cfg.sigma2_0)
    return NnhConfig(hgf=cfg.hgf, r=r, x0_hat=cfg.x0_hat, p0=cfg.p0,
                     h0=cfg.h0, sigma2_1=cfg.sigma2_1)


def _run_tasks(tasks, worker, workers: int):
    if workers <= 1:
        return [worker(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(worker, tasks, chunksize=8))


def _mean_and_se(values: np.ndarray) -> Tuple[float, float]:
    m = float(np.mean(values))
    if len(values) < 2:
        return m, 0.0
    return m, float(np.std(values, ddof=1) / math.sqrt(len(values)))


def run_mse_benchmark(cfg: ExperimentConfig) -> MseTable:
    """Simulate, observe and track every scenario x trial cell; aggregate MSEs.

    Deterministic given (cfg, master_seed); cfg.workers > 1 fans trials out
    to a process pool without changing the result.
    """
    labels, kf_m, kf_s, ga_m, ga_s, nn_m, nn_s = [], [], [], [], [], [], []
    for scen_idx, scenario in enumerate(cfg.scenarios):
        tasks = [
            (cfg.master_seed, scen_idx, t, scenario, cfg.noise, cfg.kf, cfg.garch, cfg.nnh)
            for t in range(cfg.trials)
        ]
        results = np.asarray(_run_tasks(tasks, _mse_trial, cfg.workers))
        labels.append(scenario.label())
        for col, (ms, ses) in enumerate(((kf_m, kf_s), (ga_m, ga_s), (nn_m, nn_s))):
            m, se = _mean_and_se(results[:, col])
            ms.append(m)
            ses.append(se)
    return MseTable(
        labels=tuple(labels),
        kf_mse=tuple(kf_m), kf_se=tuple(kf_s),
        garch_mse=tuple(ga_m), garch_se=tuple(ga_s),
        nnh_mse=tuple(nn_m), nnh_se=tuple(nn_s),
        trials=cfg.trials,
    )


def run_snr_sweep(cfg: ExperimentConfig) -> SnrCurve:
    """Mean SNR improvement of each filter across the input-SNR targets.

    Each trial draws a fresh trajectory of cfg.snr_scenario, contaminates
    it with two-sided-exponential noise scaled to the target input SNR,
    and scores all three filters with their r set to the realized noise
    power.
    """
    if len(cfg.snr_sweep) == 0:
        raise ValueError("snr_sweep must be nonempty")
    kf_i, ga_i, nn_i = [], [], []
    for point_idx, target in enumerate(cfg.snr_sweep):
        tasks = [
            (cfg.master_seed, point_idx, t, cfg.snr_scenario, float(target),
             "two-sided-exponential", cfg.kf, cfg.garch, cfg.nnh)
            for t in range(cfg.trials)
        ]
        results = np.asarray(_run_tasks(tasks, _snr_trial, cfg.workers))
        kf_i.append(float(np.mean(results[:, 0])))
        ga_i.append(float(np.mean(results[:, 1])))
        nn_i.append(float(np.mean(results[:, 2])))
    return SnrCurve(
        input_snr_db=tuple(float(t) for t in cfg.snr_sweep),
        kf_improvement_db=tuple(kf_i),
        garch_improvement_db=tuple(ga_i),
        nnh_improvement_db=tuple(nn_i),
        trials=cfg.trials,
    )


# ---------------------------------------------------------------------------
# persistence

def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def write_results(result: Union[MseTable, SnrCurve], path, fmt: str = "csv") -> None:
    """Persist an MseTable or SnrCurve as CSV or JSON."""
    path = Path(path)
    if fmt == "csv":
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            if isinstance(result, MseTable):
                w.writerow(MseTable.CSV_HEADER)
                for i, label in enumerate(result.labels):
                    w.writerow([
                        label,
                        _fmt(result.kf_mse[i]), _fmt(result.kf_se[i]),
                        _fmt(result.garch_mse[i]), _fmt(result.garch_se[i]),
                        _fmt(result.nnh_mse[i]), _fmt(result.nnh_se[i]),
                    ])
            elif isinstance(result, SnrCurve):
                w.writerow(SnrCurve.CSV_HEADER)
                for i, snr in enumerate(result.input_snr_db):
                    w.writerow([
                        _fmt(snr),
                        _fmt(result.kf_improvement_db[i]),
                        _fmt(result.garch_improvement_db[i]),
                        _fmt(result.nnh_improvement_db[i]),
                    ])
            else:
                raise TypeError(f"unsupported result type: {type(result).__name__}")
    elif fmt == "json":
        if isinstance(result, MseTable):
            doc = {"kind": "mse_table", **asdict(result)}
        elif isinstance(result, SnrCurve):
            doc = {"kind": "snr_curve", **asdict(result)}
        else:
            raise TypeError(f"unsupported result type: {type(result).__name__}")
        with open(path, "w", newline="") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
    else:
        raise ValueError(f"unknown format: {fmt!r} (expected 'csv' or 'json')")


def read_results(path, fmt: str = "csv") -> Union[MseTable, SnrCurve]:
    """Parse a file written by write_results back into its dataclass."""
    path = Path(path)
    if fmt == "csv":
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
        if not rows:
            raise ValueError(f"{path}: empty results file")
        header = tuple(rows[0])
        body = rows[1:]
        if header == MseTable.CSV_HEADER:
            cols = list(zip(*body)) if body else [()] * 7
            return MseTable(
                labels=tuple(cols[0]),
                kf_mse=tuple(map(float, cols[1])), kf_se=tuple(map(float, cols[2])),
                garch_mse=tuple(map(float, cols[3])), garch_se=tuple(map(float, cols[4])),
                nnh_mse=tuple(map(float, cols[5])), nnh_se=tuple(map(float, cols[6])),
            )
        if header == SnrCurve.CSV_HEADER:
            cols = list(zip(*body)) if body else [()] * 4
            return SnrCurve(
                input_snr_db=tuple(map(float, cols[0])),
                kf_improvement_db=tuple(map(float, cols[1])),
                garch_improvement_db=tuple(map(float, cols[2])),
                nnh_improvement_db=tuple(map(float, cols[3])),
            )
        raise ValueError(f"{path}: unrecognized CSV header {header}")
    if fmt == "json":
        with open(path) as fh:
            doc = json.load(fh)
        kind = doc.pop("kind", None)
        if kind == "mse_table":
            return MseTable(**{k: tuple(v) if isinstance(v, list) else v for k, v in doc.items()})
        if kind == "snr_curve":
            return SnrCurve(**{k: tuple(v) if isinstance(v, list) else v for k, v in doc.items()})
        raise ValueError(f"{path}: unrecognized JSON result kind {kind!r}")
    raise ValueError(f"unknown format: {fmt!r} (expected 'csv' or 'json')")


TRACE_HEADER = (
    "t", "x_true", "y",
    "xhat_kf", "xhat_garch", "xhat_nnh",
    "sigma2_garch", "sigma2_nnh",
    "gain_kf", "gain_nnh",
)


def export_trace(traj: Trajectory, traces: Dict[str, FilterTrace], path) -> None:
    """Write the per-step comparison CSV for one tracked trajectory.

    traces must contain entries "kf", "garch" and "nnh", each aligned to
    the trajectory length; the trajectory must carry measurements.
    """
    if traj.measurements is None:
        raise ValueError("trajectory has no measurements; observe it first")
    for name in ("kf", "garch", "nnh"):
        if name not in traces:
            raise ValueError(f"missing filter trace: {name!r}")
        if len(traces[name]) != len(traj):
            raise ValueError(
                f"trace {name!r} length {len(traces[name])} does not match trajectory {len(traj)}"
            )
    kf_t, ga_t, nn_t = traces["kf"], traces["garch"], traces["nnh"]
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(TRACE_HEADER)
        for i in range(len(traj)):
            w.writerow([
                _fmt(traj.times[i]), _fmt(traj.states[i]), _fmt(traj.measurements[i]),
                _fmt(kf_t.x_hat[i]), _fmt(ga_t.x_hat[i]), _fmt(nn_t.x_hat[i]),
                _fmt(ga_t.sigma2[i]), _fmt(nn_t.sigma2[i]),
                _fmt(kf_t.k_gain[i]), _fmt(nn_t.k_gain[i]),
            ])


TRAJECTORY_HEADER = ("t", "x_true", "y", "jump_count")


def write_trajectory_csv(traj: Trajectory, path) -> None:
    """Persist a trajectory; the y column is empty when unobserved."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(TRAJECTORY_HEADER)
        for i in range(len(traj)):
            y = "" if traj.measurements is None else _fmt(traj.measurements[i])
            w.writerow([_fmt(traj.times[i]), _fmt(traj.states[i]), y, int(traj.jump_counts[i])])


def read_trajectory_csv(path) -> Trajectory:
    """Parse a trajectory CSV written by write_trajectory_csv."""
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or tuple(rows[0]) != TRAJECTORY_HEADER:
        raise ValueError(f"{path}: expected header {','.join(TRAJECTORY_HEADER)}")
    body = rows[1:]
    if not body:
        raise ValueError(f"{path}: trajectory file has no rows")
    times = np.array([float(r[0]) for r in body])
    states = np.array([float(r[1]) for r in body])
    have_y = any(r[2] != "" for r in body)
    meas = np.array([float(r[2]) for r in body]) if have_y else None
    counts = np.array([int(r[3]) for r in body], dtype=np.int64)
    return Trajectory(times=times, states=states, jump_counts=counts, measurements=meas)


# ---------------------------------------------------------------------------
# configuration files

def _scenario_from_dict(d: dict) -> JumpProcessParams:
    d = dict(d)
    if "lambda" in d:
        d["lam"] = d.pop("lambda")
    d.pop("label", None)
    return JumpProcessParams(**d)


def load_config(path) -> ExperimentConfig:
    """Build an ExperimentConfig from a JSON document; absent fields keep
    their defaults. Scenario dicts accept "lambda" as an alias for "lam"."""
    with open(path) as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict):
        raise ValueError(f"{path}: config must be a JSON object")
    known = {
        "master_seed", "trials", "scenarios", "noise", "kf", "garch", "nnh",
        "snr_sweep", "snr_scenario", "workers",
    }
    unknown = set(doc) - known
    if unknown:
        raise ValueError(f"{path}: unknown config keys {sorted(unknown)}")
    kwargs = {}
    if "master_seed" in doc:
        kwargs["master_seed"] = int(doc["master_seed"])
    if "trials" in doc:
        kwargs["trials"] = int(doc["trials"])
    if "workers" in doc:
        kwargs["workers"] = int(doc["workers"])
    if "scenarios" in doc:
        kwargs["scenarios"] = tuple(_scenario_from_dict(s) for s in doc["scenarios"])
    if "snr_scenario" in doc:
        kwargs["snr_scenario"] = _scenario_from_dict(doc["snr_scenario"])
    if "snr_sweep" in doc:
        kwargs["snr_sweep"] = tuple(float(v) for v in doc["snr_sweep"])
    if "noise" in doc:
        kwargs["noise"] = NoiseSpec(**doc["noise"])
    if "kf" in doc:
        kwargs["kf"] = KfConfig(**doc["kf"])
    if "garch" in doc:
        kwargs["garch"] = GarchConfig(**doc["garch"])
    if "nnh" in doc:
        n = dict(doc["nnh"])
        hgf_kwargs = {k: n.pop(k) for k in ("alpha", "beta", "rho") if k in n}
        if hgf_kwargs:
            n["hgf"] = HgfParams(**{"alpha": 50.0, "beta": 10.0, **hgf_kwargs})
        kwargs["nnh"] = NnhConfig(**n)
    return ExperimentConfig(**kwargs)
