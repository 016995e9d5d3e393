"""Command-line front end.

Subcommands
-----------
simulate            one scenario at the config's noise variance
sweep               SNR-grid sweep of the leakage and sum-rate experiments
sense-roc           fast / fine sensing ROC tables
calibrate-threshold threshold calibration tables (fast eigenvalue stage and GLRT)

The config file uses the flat key=value schema documented in
spatial_holes.model.  The seed is resolved as: SPATIAL_HOLES_SEED
environment variable, then --seed, then the config file's seed entry.
Invalid configs exit with status 2.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

from . import fine_sensing
from .fast_sensing import fast_threshold, write_threshold_table
from .harness import (
    Scenario,
    emit_outputs,
    run_antenna_sweep_experiment,
    run_fast_sensing_experiment,
    run_fine_sensing_experiment,
    run_leakage_experiment,
    run_sumrate_experiment,
)
from .model import load_config

SEED_ENV_VAR = "SPATIAL_HOLES_SEED"


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", required=True, help="scenario config file")
    parser.add_argument("--seed", type=int, default=None, help="RNG seed (env wins)")
    parser.add_argument("--trials", type=int, default=2000, help="Monte Carlo trials per point")
    parser.add_argument("--out", default="out", help="output directory for CSV / plot scripts")
    parser.add_argument(
        "--silent-pair",
        type=int,
        action="append",
        default=None,
        help="1-based primary pair to silence (repeatable; default: pair 1)",
    )


def _resolve_seed(args, config_seed) -> int:
    env = os.environ.get(SEED_ENV_VAR)
    if env is not None:
        return int(env)
    if args.seed is not None:
        return args.seed
    if config_seed is not None:
        return config_seed
    return 0


def _load_scenario(args, snr_grid=None) -> Scenario:
    cfg, config_seed = load_config(args.config)
    violations = cfg.validate()
    if violations:
        for msg in violations:
            print(f"config violation: {msg}", file=sys.stderr)
        raise SystemExit(2)
    seed = _resolve_seed(args, config_seed)
    silent = tuple(args.silent_pair) if args.silent_pair else (1,)
    kwargs = dict(cfg=cfg, trials=args.trials, seed=seed, silent_pairs=silent)
    if snr_grid is not None:
        kwargs["snr_grid_db"] = snr_grid
    return Scenario(**kwargs)


def _parse_grid(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(tok) for tok in text.split(",") if tok.strip())
    except ValueError as exc:
        raise SystemExit(f"bad grid {text!r}: {exc}")


def cmd_simulate(args) -> int:
    cfg, config_seed = load_config(args.config)
    snr_db = 10.0 * math.log10(cfg.pairs[0].p / cfg.noise_var)
    scenario = _load_scenario(args, snr_grid=(snr_db,))
    tables = [run_leakage_experiment(scenario), run_sumrate_experiment(scenario)]
    for path in emit_outputs(tables, args.out):
        print(path)
    return 0


def cmd_sweep(args) -> int:
    scenario = _load_scenario(args, snr_grid=_parse_grid(args.snr))
    tables = [run_leakage_experiment(scenario), run_sumrate_experiment(scenario)]
    if args.antenna_sweep:
        tables.append(run_antenna_sweep_experiment(scenario))
    for path in emit_outputs(tables, args.out):
        print(path)
    return 0


def cmd_sense_roc(args) -> int:
    base = _load_scenario(args)
    scenario = Scenario(
        cfg=base.cfg,
        trials=base.trials,
        seed=base.seed,
        silent_pairs=base.silent_pairs,
        smoothing_factors=tuple(args.T) if args.T else (3,),
        sample_count=args.L,
        fine_T_values=tuple(args.T_fine) if args.T_fine else (16, 64),
        fusion_antennas=tuple(args.N0) if args.N0 else (base.cfg.secondary.N,),
        dim_convention=args.dim_convention,
    )
    tables = []
    if args.stage in ("fast", "both"):
        tables.append(run_fast_sensing_experiment(scenario))
    if args.stage in ("fine", "both"):
        tables.append(run_fine_sensing_experiment(scenario))
    for path in emit_outputs(tables, args.out):
        print(path)
    return 0


def cmd_calibrate_threshold(args) -> int:
    import pathlib

    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    targets = _parse_grid(args.pfa)
    rows = []
    for pfa in targets:
        for T in args.T or (3,):
            eta = fast_threshold(pfa, args.L, T, args.N0, args.dim_convention)
            rows.append((pfa, repr(eta), args.L, T, args.N0, args.dim_convention))
    fast_path = out / "fast_thresholds.csv"
    write_threshold_table(fast_path, rows)
    print(fast_path)

    glrt_path = out / "glrt_thresholds.csv"
    with open(glrt_path, "w", encoding="utf-8", newline="") as fh:
        fh.write("pfa_target,eta_prime,T,noise_var\n")
        for pfa in targets:
            for T in args.T_fine or (16, 64):
                eta_prime = fine_sensing.glrt_threshold(pfa, T, args.noise_var)
                fh.write(f"{pfa},{eta_prime!r},{T},{args.noise_var!r}\n")
    print(glrt_path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spatial-holes",
        description="Cognitive-radio spatial-hole simulation and sensing experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="run one scenario at the config's noise variance")
    _add_common(p_sim)
    p_sim.set_defaults(func=cmd_simulate)

    p_sweep = sub.add_parser("sweep", help="SNR-grid sweep of leakage and sum-rate experiments")
    _add_common(p_sweep)
    p_sweep.add_argument("--snr", default="0,5,10,15,20,25,30", help="comma-separated dB grid")
    p_sweep.add_argument(
        "--antenna-sweep", action="store_true", help="also sweep fusion-center antennas"
    )
    p_sweep.set_defaults(func=cmd_sweep)

    p_roc = sub.add_parser("sense-roc", help="sensing ROC tables (fast / fine stages)")
    _add_common(p_roc)
    p_roc.add_argument("--stage", choices=("fast", "fine", "both"), default="both")
    p_roc.add_argument("--T", type=int, action="append", help="smoothing factor (repeatable)")
    p_roc.add_argument("--L", type=int, default=30, help="number of stacked matrices")
    p_roc.add_argument(
        "--T-fine", type=int, action="append", help="fine-stage sample count (repeatable)"
    )
    p_roc.add_argument(
        "--N0", type=int, action="append", help="fusion-center antennas (repeatable)"
    )
    p_roc.add_argument("--dim-convention", choices=("paper", "stacked"), default="paper")
    p_roc.set_defaults(func=cmd_sense_roc)

    p_cal = sub.add_parser("calibrate-threshold", help="export threshold calibration tables")
    p_cal.add_argument("--pfa", default="0.1,0.01", help="comma-separated target PFAs")
    p_cal.add_argument("--L", type=int, default=30)
    p_cal.add_argument("--T", type=int, action="append", help="smoothing factor (repeatable)")
    p_cal.add_argument("--N0", type=int, default=3)
    p_cal.add_argument("--T-fine", type=int, action="append")
    p_cal.add_argument("--noise-var", type=float, default=1.0)
    p_cal.add_argument("--dim-convention", choices=("paper", "stacked"), default="paper")
    p_cal.add_argument("--out", default="out")
    p_cal.set_defaults(func=cmd_calibrate_threshold)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
