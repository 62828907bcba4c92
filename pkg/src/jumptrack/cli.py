"""Command-line entry point.

Subcommands:
  simulate   emit one simulated, noise-contaminated trajectory as CSV
  track      run all three filters on a trajectory (file or fresh) and
             emit the per-step trace CSV
  bench-mse  Monte Carlo MSE benchmark table
  bench-snr  Monte Carlo SNR-improvement sweep

Exit codes: 0 success, 2 configuration or usage error, 1 runtime error.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys

from .bench import (
    ExperimentConfig,
    export_trace,
    load_config,
    read_trajectory_csv,
    run_mse_benchmark,
    run_snr_sweep,
    trial_rng,
    write_results,
    write_trajectory_csv,
    _STREAM_MSE,
)
from .filters import run_filter
from .simulate import observe, simulate_jump_process

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_USAGE = 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="jumptrack",
                                     description="Jump-process tracking benchmarks")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, trials=True):
        p.add_argument("--config", metavar="PATH", help="JSON experiment config")
        p.add_argument("--seed", type=int, metavar="U64", help="master seed override")
        p.add_argument("--out", metavar="PATH", required=True, help="output file")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        if trials:
            p.add_argument("--trials", type=int, metavar="N", help="trials override")
        p.add_argument("--workers", type=int, metavar="N", help="worker processes")

    p_sim = sub.add_parser("simulate", help="emit a simulated trajectory CSV")
    common(p_sim, trials=False)
    p_sim.add_argument("--scenario", type=int, default=0, metavar="I",
                       help="index into the configured scenario list")

    p_track = sub.add_parser("track", help="filter a trajectory and emit a trace CSV")
    common(p_track, trials=False)
    p_track.add_argument("--input", metavar="PATH",
                         help="trajectory CSV to track (default: fresh simulation)")
    p_track.add_argument("--scenario", type=int, default=0, metavar="I")

    p_mse = sub.add_parser("bench-mse", help="Monte Carlo MSE benchmark")
    common(p_mse)

    p_snr = sub.add_parser("bench-snr", help="Monte Carlo SNR-improvement sweep")
    common(p_snr)

    return parser


def _load_experiment(args) -> ExperimentConfig:
    cfg = load_config(args.config) if args.config else ExperimentConfig()
    overrides = {}
    if args.seed is not None:
        overrides["master_seed"] = args.seed
    if getattr(args, "trials", None) is not None:
        overrides["trials"] = args.trials
    if getattr(args, "workers", None) is not None:
        overrides["workers"] = args.workers
    if overrides:
        cfg = dataclasses.replace(cfg, **overrides)
    return cfg


def _scenario(cfg: ExperimentConfig, index: int):
    if not (0 <= index < len(cfg.scenarios)):
        raise ValueError(f"scenario index {index} out of range (have {len(cfg.scenarios)})")
    return cfg.scenarios[index]


def _cmd_simulate(args) -> int:
    cfg = _load_experiment(args)
    scenario = _scenario(cfg, args.scenario)
    rng = trial_rng(cfg.master_seed, _STREAM_MSE, args.scenario, 0)
    traj = observe(simulate_jump_process(scenario, rng), cfg.noise, rng)
    write_trajectory_csv(traj, args.out)
    print(f"wrote {len(traj)} samples to {args.out}")
    return EXIT_OK


def _cmd_track(args) -> int:
    cfg = _load_experiment(args)
    if args.input:
        traj = read_trajectory_csv(args.input)
        if traj.measurements is None:
            rng = trial_rng(cfg.master_seed, _STREAM_MSE, args.scenario, 0)
            traj = observe(traj, cfg.noise, rng)
    else:
        scenario = _scenario(cfg, args.scenario)
        rng = trial_rng(cfg.master_seed, _STREAM_MSE, args.scenario, 0)
        traj = observe(simulate_jump_process(scenario, rng), cfg.noise, rng)
    traces = {
        "kf": run_filter("kf", cfg.kf, traj.measurements),
        "garch": run_filter("garch", cfg.garch, traj.measurements),
        "nnh": run_filter("nnh", cfg.nnh, traj.measurements),
    }
    export_trace(traj, traces, args.out)
    print(f"wrote trace of {len(traj)} steps to {args.out}")
    return EXIT_OK


def _cmd_bench_mse(args) -> int:
    cfg = _load_experiment(args)
    table = run_mse_benchmark(cfg)
    write_results(table, args.out, args.format)
    for i, label in enumerate(table.labels):
        print(f"{label}: kf={table.kf_mse[i]:.3f} garch={table.garch_mse[i]:.3f} "
              f"nnh={table.nnh_mse[i]:.3f}")
    print(f"wrote {args.format} to {args.out}")
    return EXIT_OK


def _cmd_bench_snr(args) -> int:
    cfg = _load_experiment(args)
    curve = run_snr_sweep(cfg)
    write_results(curve, args.out, args.format)
    for i, snr in enumerate(curve.input_snr_db):
        print(f"input {snr:+.1f} dB: kf={curve.kf_improvement_db[i]:.2f} "
              f"garch={curve.garch_improvement_db[i]:.2f} "
              f"nnh={curve.nnh_improvement_db[i]:.2f}")
    print(f"wrote {args.format} to {args.out}")
    return EXIT_OK


_COMMANDS = {
    "simulate": _cmd_simulate,
    "track": _cmd_track,
    "bench-mse": _cmd_bench_mse,
    "bench-snr": _cmd_bench_snr,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, TypeError, FileNotFoundError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
