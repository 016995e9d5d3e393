"""Monte Carlo experiment orchestration: scenarios, runners, CSV emission.

Every runner is a pure function of (scenario, seed): per-trial generators
draw from dedicated RNG streams addressed by (seed, experiment id, sweep
point, trial), so re-runs are byte-identical and trials can be aggregated
in any chunk order through mergeable Welford accumulators.

SNR is swept by varying the noise variance at fixed transmit powers; the
SNR axis reports p_1 / noise_var in dB.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial

import numpy as np

from . import fine_sensing
from .fast_sensing import fast_threshold, stack_samples, stacked_covariance
from .ia import distributed_ia, pair_rate
from .linalg import hermitian_eig
from .model import (
    ActivityPattern,
    ChannelSet,
    NetworkConfig,
    PairConfig,
    SecondaryConfig,
    draw_channels,
    draw_noise,
    fusion_center_samples,
    make_rng,
)
from .secondary import (
    SecondaryDesign,
    design_secondary,
    primary_to_secondary_interference,
    secondary_rate,
)

SCHEMA_STAMP = "# spatial-holes metrics schema v1"
CSV_COLUMNS = ["experiment", "sweep", "point", "metric", "mean", "std_error", "trials", "seed"]

_EXPERIMENT_IDS = {
    "leakage": 1,
    "sumrate": 2,
    "antenna-sweep": 3,
    "fast-sensing": 4,
    "fine-sensing": 5,
    "simulate": 6,
}


# ---------------------------------------------------------------------------
# Accumulation
# ---------------------------------------------------------------------------

class RunningStat:
    """Mergeable Welford accumulator (count, mean, sum of squared deviations)."""

    __slots__ = ("n", "mean", "m2")

    def __init__(self):
        self.n = 0
        self.mean = 0.0
        self.m2 = 0.0

    def add(self, x: float) -> None:
        self.n += 1
        delta = float(x) - self.mean
        self.mean += delta / self.n
        self.m2 += delta * (float(x) - self.mean)

    def merge(self, other: "RunningStat") -> None:
        if other.n == 0:
            return
        if self.n == 0:
            self.n, self.mean, self.m2 = other.n, other.mean, other.m2
            return
        total = self.n + other.n
        delta = other.mean - self.mean
        self.mean += delta * other.n / total
        self.m2 += other.m2 + delta * delta * self.n * other.n / total
        self.n = total

    @property
    def std_error(self) -> float:
        if self.n < 2:
            return 0.0
        return math.sqrt(self.m2 / (self.n - 1)) / math.sqrt(self.n)


def _chunk_stats(trial_fn, lo: int, hi: int) -> dict[str, RunningStat]:
    stats: dict[str, RunningStat] = {}
    for trial in range(lo, hi):
        for key, value in trial_fn(trial).items():
            stats.setdefault(key, RunningStat()).add(value)
    return stats


def _chunk_stats_args(args) -> dict[str, RunningStat]:
    return _chunk_stats(*args)


def aggregate_trials(trial_fn, trials: int, workers: int = 1, chunk: int = 64):
    """Run trial_fn(0..trials-1), each returning {metric: value}, and merge.

    Chunks are merged in fixed index order, so the result is identical for
    any worker count.  trial_fn must be picklable when workers > 1.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    ranges = [(lo, min(lo + chunk, trials)) for lo in range(0, trials, chunk)]
    if workers <= 1 or len(ranges) == 1:
        partials = [_chunk_stats(trial_fn, lo, hi) for lo, hi in ranges]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            partials = list(
                pool.map(_chunk_stats_args, [(trial_fn, lo, hi) for lo, hi in ranges])
            )
    merged: dict[str, RunningStat] = {}
    for part in partials:
        for key, stat in part.items():
            merged.setdefault(key, RunningStat()).merge(stat)
    return merged


# ---------------------------------------------------------------------------
# Scenario and metric tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Scenario:
    """One experiment description: network, sweep axes, budgets, sensing knobs."""

    cfg: NetworkConfig
    trials: int = 2000
    seed: int = 0
    snr_grid_db: tuple[float, ...] = (0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0)
    silent_pairs: tuple[int, ...] = (1,)
    infeasible_tx_antennas: int = 2
    # sensing knobs
    smoothing_factors: tuple[int, ...] = (3,)
    sample_count: int = 30
    pfa_targets: tuple[float, ...] = (0.1, 0.01)
    fine_T_values: tuple[int, ...] = (16, 64)
    fusion_antennas: tuple[int, ...] = (3, 4)
    eta_grid: tuple[float, ...] | None = None
    dim_convention: str = "paper"
    sample_convention: str = "real"
    workers: int = 1

    def validate(self) -> list[str]:
        problems = self.cfg.validate()
        if self.trials < 1:
            problems.append("trials must be at least 1")
        if not self.snr_grid_db:
            problems.append("SNR grid must be nonempty")
        return problems


@dataclass(frozen=True)
class MetricRow:
    experiment: str
    sweep: str
    point: str
    metric: str
    mean: float
    std_error: float
    trials: int
    seed: int


@dataclass
class MetricTable:
    experiment: str
    rows: list[MetricRow] = field(default_factory=list)

    def add(self, sweep, point, metric, stat: RunningStat, seed: int) -> None:
        self.rows.append(
            MetricRow(
                experiment=self.experiment,
                sweep=sweep,
                point=point,
                metric=metric,
                mean=stat.mean,
                std_error=stat.std_error,
                trials=stat.n,
                seed=seed,
            )
        )

    def metric(self, metric: str, point: str | None = None) -> list[MetricRow]:
        return [
            r
            for r in self.rows
            if r.metric == metric and (point is None or r.point == point)
        ]


def _check(scenario: Scenario) -> None:
    problems = scenario.validate()
    if problems:
        raise ValueError("invalid scenario: " + "; ".join(problems))


def noise_var_for_snr_db(cfg: NetworkConfig, snr_db: float) -> float:
    """Noise variance giving the requested SNR at fixed pair-1 transmit power."""
    return cfg.pairs[0].p / (10.0 ** (snr_db / 10.0))


def point_label(**axes) -> str:
    parts = []
    for key, value in axes.items():
        if isinstance(value, float):
            parts.append(f"{key}={value:.6g}")
        else:
            parts.append(f"{key}={value}")
    return ";".join(parts)


def matched_primary_config(
    n0: int, power: float = 10.0, noise_var: float = 1.0, m0: int | None = None, d0: int = 1
) -> NetworkConfig:
    """A d=1 primary with as many pairs as fusion antennas (N0 = total streams).

    Pair antennas grow with the user count to keep alignment proper
    (M + N >= K + 1 for single-stream pairs).
    """
    antennas = max(2, math.ceil((n0 + 1) / 2))
    pairs = tuple(PairConfig(M=antennas, N=antennas, d=1, p=power) for _ in range(n0))
    secondary = SecondaryConfig(M=m0 if m0 is not None else n0, N=n0, d=d0, p=power)
    return NetworkConfig(pairs=pairs, secondary=secondary, noise_var=noise_var)


# ---------------------------------------------------------------------------
# Leakage experiment  (interference power at primary / secondary receivers)
# ---------------------------------------------------------------------------

def _sliced_channels(channels: ChannelSet, cfg: NetworkConfig, m0: int, n0: int) -> ChannelSet:
    """Restrict the secondary node to its first m0 transmit / n0 receive antennas."""
    mats = dict(channels.matrices)
    for k in range(1, cfg.K + 1):
        mats[(k, 0)] = mats[(k, 0)][:, :m0]
        mats[(0, k)] = mats[(0, k)][:n0, :]
    mats[(0, 0)] = mats[(0, 0)][:n0, :m0]
    return ChannelSet(matrices=mats, K=cfg.K)


def _small_secondary_cfg(cfg: NetworkConfig, m0: int) -> NetworkConfig:
    sec = cfg.secondary
    return NetworkConfig(
        pairs=cfg.pairs,
        secondary=SecondaryConfig(M=m0, N=sec.N, d=sec.d, p=sec.p),
        noise_var=cfg.noise_var,
    )


def _active_receiver_leakage(design: SecondaryDesign, activity: ActivityPattern, cfg) -> float:
    return float(
        sum(
            design.leakage_per_receiver[k - 1]
            for k in range(1, cfg.K + 1)
            if activity.d_active(k) > 0
        )
    )


@dataclass(frozen=True)
class _LeakageCtx:
    cfg: NetworkConfig
    seed: int
    point_idx: int
    silent_pairs: tuple[int, ...]
    m0_small: int
    ia_iterations: int = 20


def _leakage_trial(ctx: _LeakageCtx, trial: int) -> dict[str, float]:
    rng = make_rng(ctx.seed, _EXPERIMENT_IDS["leakage"], ctx.point_idx, trial)
    cfg = ctx.cfg
    channels = draw_channels(cfg, rng)
    ia = distributed_ia(channels, cfg, ctx.ia_iterations)
    hole = ActivityPattern.with_silent_pairs(cfg, ctx.silent_pairs)

    design = design_secondary(channels, ia, cfg, hole)
    leak_zf = _active_receiver_leakage(design, hole, cfg)

    cfg_small = _small_secondary_cfg(cfg, ctx.m0_small)
    ch_small = _sliced_channels(channels, cfg, ctx.m0_small, cfg.secondary.N)
    design_small = design_secondary(ch_small, ia, cfg_small, hole)
    leak_small = _active_receiver_leakage(design_small, hole, cfg_small)

    ps = primary_to_secondary_interference(design, channels, ia, cfg, hole)
    return {
        "cr_to_primary_leakage_zf_w": leak_zf,
        "cr_to_primary_leakage_small_w": leak_small,
        "primary_self_interference_w": ia.final_leakage,
        "primary_to_secondary_w": ps,
        "zf_mode_is_null_space": 1.0 if design.mode == "zero-forcing" else 0.0,
    }


def run_leakage_experiment(scenario: Scenario) -> MetricTable:
    """Mean interference powers per SNR point (ZF and small-M0 secondary)."""
    _check(scenario)
    table = MetricTable("leakage")
    for idx, snr_db in enumerate(scenario.snr_grid_db):
        cfg = scenario.cfg.replace_noise_var(noise_var_for_snr_db(scenario.cfg, snr_db))
        ctx = _LeakageCtx(
            cfg=cfg,
            seed=scenario.seed,
            point_idx=idx,
            silent_pairs=scenario.silent_pairs,
            m0_small=scenario.infeasible_tx_antennas,
        )
        stats = aggregate_trials(partial(_leakage_trial, ctx), scenario.trials, scenario.workers)
        for metric, stat in sorted(stats.items()):
            table.add("snr_db", point_label(snr_db=snr_db), metric, stat, scenario.seed)
    return table


# ---------------------------------------------------------------------------
# Sum-rate experiment  (primary rates with/without CR, secondary rate)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _SumrateCtx:
    cfg: NetworkConfig
    seed: int
    point_idx: int
    silent_pairs: tuple[int, ...]
    m0_small: int
    ia_iterations: int = 20


def _sumrate_trial(ctx: _SumrateCtx, trial: int) -> dict[str, float]:
    rng = make_rng(ctx.seed, _EXPERIMENT_IDS["sumrate"], ctx.point_idx, trial)
    cfg = ctx.cfg
    channels = draw_channels(cfg, rng)
    ia = distributed_ia(channels, cfg, ctx.ia_iterations)
    hole = ActivityPattern.with_silent_pairs(cfg, ctx.silent_pairs)

    without = float(np.sum(pair_rate(ia, channels, cfg, hole, None)))
    design = design_secondary(channels, ia, cfg, hole)
    with_zf = float(np.sum(pair_rate(ia, channels, cfg, hole, design)))

    cfg_small = _small_secondary_cfg(cfg, ctx.m0_small)
    ch_small = _sliced_channels(channels, cfg, ctx.m0_small, cfg.secondary.N)
    design_small = design_secondary(ch_small, ia, cfg_small, hole)
    with_small = float(np.sum(pair_rate(ia, ch_small, cfg_small, hole, design_small)))

    return {
        "primary_sumrate_without_cr": without,
        "primary_sumrate_with_cr_zf": with_zf,
        "primary_sumrate_with_cr_small": with_small,
        "secondary_rate_zf": secondary_rate(design),
        "secondary_rate_small": secondary_rate(design_small),
    }


def run_sumrate_experiment(scenario: Scenario) -> MetricTable:
    """Primary sum-rate before/after CR transmission and secondary rate, per SNR."""
    _check(scenario)
    table = MetricTable("sumrate")
    for idx, snr_db in enumerate(scenario.snr_grid_db):
        cfg = scenario.cfg.replace_noise_var(noise_var_for_snr_db(scenario.cfg, snr_db))
        ctx = _SumrateCtx(
            cfg=cfg,
            seed=scenario.seed,
            point_idx=idx,
            silent_pairs=scenario.silent_pairs,
            m0_small=scenario.infeasible_tx_antennas,
        )
        stats = aggregate_trials(partial(_sumrate_trial, ctx), scenario.trials, scenario.workers)
        for metric, stat in sorted(stats.items()):
            table.add("snr_db", point_label(snr_db=snr_db), metric, stat, scenario.seed)
    return table


# ---------------------------------------------------------------------------
# Secondary-antenna sweep  (rates versus N0 at fixed SNR)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _AntennaCtx:
    cfg: NetworkConfig             # with the LARGEST N0 of the sweep
    seed: int
    n0_values: tuple[int, ...]
    silent_pairs: tuple[int, ...]
    ia_iterations: int = 20


def _antenna_trial(ctx: _AntennaCtx, trial: int) -> dict[str, float]:
    rng = make_rng(ctx.seed, _EXPERIMENT_IDS["antenna-sweep"], 0, trial)
    cfg = ctx.cfg
    channels = draw_channels(cfg, rng)
    ia = distributed_ia(channels, cfg, ctx.ia_iterations)
    hole = ActivityPattern.with_silent_pairs(cfg, ctx.silent_pairs)
    out = {}
    for n0 in ctx.n0_values:
        sec = cfg.secondary
        cfg_n = NetworkConfig(
            pairs=cfg.pairs,
            secondary=SecondaryConfig(M=sec.M, N=n0, d=sec.d, p=sec.p),
            noise_var=cfg.noise_var,
        )
        ch_n = _sliced_channels(channels, cfg, sec.M, n0)
        design = design_secondary(ch_n, ia, cfg_n, hole)
        out[f"secondary_rate@n0={n0}"] = secondary_rate(design)
        out[f"secondary_sinr@n0={n0}"] = float(design.sinr_per_stream[0])
        out[f"primary_sumrate_with_cr@n0={n0}"] = float(
            np.sum(pair_rate(ia, ch_n, cfg_n, hole, design))
        )
    return out


def run_antenna_sweep_experiment(scenario: Scenario, n0_values=None) -> MetricTable:
    """Secondary SINR/rate versus the number of fusion-center antennas.

    All N0 points of a trial share one channel draw (smaller arrays are
    leading sub-blocks), which couples the points and makes the
    more-antennas-never-hurts comparison exact per realization.
    """
    _check(scenario)
    n0_values = tuple(n0_values) if n0_values is not None else tuple(range(3, 11))
    n0_max = max(n0_values)
    sec = scenario.cfg.secondary
    cfg = NetworkConfig(
        pairs=scenario.cfg.pairs,
        secondary=SecondaryConfig(M=sec.M, N=n0_max, d=sec.d, p=sec.p),
        noise_var=scenario.cfg.noise_var,
    )
    ctx = _AntennaCtx(
        cfg=cfg, seed=scenario.seed, n0_values=n0_values, silent_pairs=scenario.silent_pairs
    )
    stats = aggregate_trials(partial(_antenna_trial, ctx), scenario.trials, scenario.workers)
    table = MetricTable("antenna-sweep")
    for n0 in n0_values:
        for name in ("secondary_rate", "secondary_sinr", "primary_sumrate_with_cr"):
            stat = stats[f"{name}@n0={n0}"]
            table.add("n0", point_label(n0=n0), name, stat, scenario.seed)
    return table


# ---------------------------------------------------------------------------
# Fast-sensing experiment  (PFA + Lemma-4 bounds + PD versus threshold, ROC)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _FastSenseCtx:
    cfg: NetworkConfig
    seed: int
    point_idx: int
    T: int
    L: int
    silent_pairs: tuple[int, ...]
    eta_grid: tuple[float, ...]
    ia_iterations: int = 20


def _fast_sense_trial(ctx: _FastSenseCtx, trial: int) -> dict[str, float]:
    """Eigen extremes under one hole, two holes, all active, and noise only,
    plus threshold-exceedance indicators over the eta grid.

    All cases share the same noise draw, so the Weyl sandwich
    lambda_min(R_Z) <= lambda_min(R_Y | hole) <= lambda_max(R_Z) holds per
    trial exactly (the noise-free covariance is exactly rank deficient when
    a stream is silent).
    """
    rng = make_rng(ctx.seed, _EXPERIMENT_IDS["fast-sensing"], ctx.point_idx, trial)
    cfg = ctx.cfg
    channels = draw_channels(cfg, rng)
    ia = distributed_ia(channels, cfg, ctx.ia_iterations)
    n_raw = ctx.T + ctx.L - 1
    noise = draw_noise(cfg.secondary.N, cfg.noise_var, n_raw, rng)

    def lam_extremes(raw):
        cov = stacked_covariance(stack_samples(raw, ctx.T, ctx.L), cfg.noise_var)
        w = hermitian_eig(cov).values
        return float(w[0]), float(w[-1])

    patterns = {
        "hole1": ActivityPattern.with_silent_pairs(cfg, ctx.silent_pairs[:1]),
        "hole2": ActivityPattern.with_silent_pairs(
            cfg, tuple(dict.fromkeys(ctx.silent_pairs + (1, 2)))[:2]
        ),
        "full": ActivityPattern.all_active(cfg),
    }
    lam = {}
    for name, pattern in patterns.items():
        signal = fusion_center_samples(
            channels, ia.V, cfg, pattern, n_raw, rng, include_noise=False
        )
        lam[name], _ = lam_extremes(signal + noise)
    z_min, z_max = lam_extremes(noise)

    out = {
        "lambda_min_hole1": lam["hole1"],
        "lambda_min_full": lam["full"],
        "lambda_min_noise": z_min,
        "lambda_max_noise": z_max,
    }
    for eta in ctx.eta_grid:
        tag = f"{eta:.6g}"
        out[f"pfa_hole1@eta={tag}"] = 1.0 if lam["hole1"] > eta else 0.0
        out[f"pfa_hole2@eta={tag}"] = 1.0 if lam["hole2"] > eta else 0.0
        out[f"pd_full@eta={tag}"] = 1.0 if lam["full"] > eta else 0.0
        out[f"bound_lower@eta={tag}"] = 1.0 if z_min > eta else 0.0
        out[f"bound_upper@eta={tag}"] = 1.0 if z_max > eta else 0.0
    return out


def _default_eta_grid(L: int, T: int, n0: int, dim_convention: str) -> tuple[float, ...]:
    top = fast_threshold(0.01, L, T, n0, dim_convention)
    grid = np.linspace(0.05, 1.25 * top, 16)
    return tuple(float(x) for x in grid)


def run_fast_sensing_experiment(scenario: Scenario) -> MetricTable:
    """Empirical hole-miss probability, its Lemma-4 noise-only bounds, and the
    all-active detection probability over a threshold grid, per (T, N0).

    The fusion-antenna sweep scales the primary network so that N0 equals
    the total stream count (the regime where an inactive stream leaves the
    signal covariance rank deficient).
    """
    _check(scenario)
    table = MetricTable("fast-sensing")
    point_idx = 0
    for n0 in scenario.fusion_antennas:
        if n0 == scenario.cfg.secondary.N and n0 == scenario.cfg.total_primary_streams:
            base = scenario.cfg
        else:
            base = matched_primary_config(
                n0, power=scenario.cfg.pairs[0].p, noise_var=scenario.cfg.noise_var
            )
        for T in scenario.smoothing_factors:
            grid = scenario.eta_grid or _default_eta_grid(
                scenario.sample_count, T, n0, scenario.dim_convention
            )
            ctx = _FastSenseCtx(
                cfg=base,
                seed=scenario.seed,
                point_idx=point_idx,
                T=T,
                L=scenario.sample_count,
                silent_pairs=scenario.silent_pairs,
                eta_grid=tuple(grid),
            )
            stats = aggregate_trials(
                partial(_fast_sense_trial, ctx), scenario.trials, scenario.workers
            )
            point_idx += 1
            for eta in grid:
                tag = f"{eta:.6g}"
                point = point_label(T=T, n0=n0, eta=eta)
                for name in ("pfa_hole1", "pfa_hole2", "pd_full", "bound_lower",
                             "bound_upper"):
                    table.add("T;n0;eta", point, name, stats[f"{name}@eta={tag}"],
                              scenario.seed)
            for name in ("lambda_min_hole1", "lambda_min_full", "lambda_min_noise",
                         "lambda_max_noise"):
                table.add(
                    "T;n0", point_label(T=T, n0=n0), name, stats[name], scenario.seed
                )
    return table


# ---------------------------------------------------------------------------
# Fine-sensing experiment  (per-stream GLRT ROC with theory overlay)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _FineSenseCtx:
    cfg: NetworkConfig
    seed: int
    point_idx: int
    T: int
    convention: str
    probe_pair: int = 1
    probe_stream: int = 0
    ia_iterations: int = 20


def _fine_sense_trial(ctx: _FineSenseCtx, trial: int) -> dict[str, float]:
    """GLRT statistic for the probe stream when silent and when active."""
    rng = make_rng(ctx.seed, _EXPERIMENT_IDS["fine-sensing"], ctx.point_idx, trial)
    cfg = ctx.cfg
    channels = draw_channels(cfg, rng)
    ia = distributed_ia(channels, cfg, ctx.ia_iterations)
    d = fine_sensing.sensing_vector(channels, ia, ctx.probe_pair, ctx.probe_stream)

    active = ActivityPattern.all_active(cfg)
    silent = ActivityPattern.with_silent_streams(cfg, [(ctx.probe_pair, ctx.probe_stream)])
    raw_h1 = fusion_center_samples(channels, ia.V, cfg, active, ctx.T, rng)
    raw_h0 = fusion_center_samples(channels, ia.V, cfg, silent, ctx.T, rng)
    y1 = fine_sensing.stream_samples(raw_h1, d, ctx.convention)
    y0 = fine_sensing.stream_samples(raw_h0, d, ctx.convention)
    return {
        "stat_active": fine_sensing.glrt_statistic(y1, cfg.noise_var),
        "stat_silent": fine_sensing.glrt_statistic(y0, cfg.noise_var),
    }


def run_fine_sensing_experiment(scenario: Scenario) -> MetricTable:
    """Per-stream ROC: empirical PFA/PD at calibrated thresholds plus the
    closed-form PFA overlay, per (T, N0)."""
    _check(scenario)
    table = MetricTable("fine-sensing")
    pfa_grid = scenario.pfa_targets if len(scenario.pfa_targets) > 2 else (
        0.01, 0.05, 0.1, 0.2, 0.3, 0.5
    )
    point_idx = 0
    for n0 in scenario.fusion_antennas:
        if n0 == scenario.cfg.secondary.N and n0 == scenario.cfg.total_primary_streams:
            base = scenario.cfg
        else:
            base = matched_primary_config(
                n0, power=scenario.cfg.pairs[0].p, noise_var=scenario.cfg.noise_var
            )
        for T in scenario.fine_T_values:
            ctx = _FineSenseCtx(
                cfg=base,
                seed=scenario.seed,
                point_idx=point_idx,
                T=T,
                convention=scenario.sample_convention,
            )
            point_idx += 1
            dof = T if scenario.sample_convention == "real" else 2 * T
            thresholds = [
                fine_sensing.glrt_threshold(p, dof, base.noise_var) for p in pfa_grid
            ]
            per_thr: dict[float, dict[str, RunningStat]] = {
                thr: {"pfa": RunningStat(), "pd": RunningStat()} for thr in thresholds
            }
            for trial in range(scenario.trials):
                vals = _fine_sense_trial(ctx, trial)
                for thr in thresholds:
                    per_thr[thr]["pfa"].add(1.0 if vals["stat_silent"] > thr else 0.0)
                    per_thr[thr]["pd"].add(1.0 if vals["stat_active"] > thr else 0.0)
            for target, thr in zip(pfa_grid, thresholds):
                point = point_label(T=T, n0=n0, target_pfa=target)
                table.add("T;n0;target_pfa", point, "pfa_empirical",
                          per_thr[thr]["pfa"], scenario.seed)
                table.add("T;n0;target_pfa", point, "pd_empirical",
                          per_thr[thr]["pd"], scenario.seed)
                theory = RunningStat()
                theory.add(fine_sensing.glrt_pfa(thr, dof, base.noise_var))
                table.add("T;n0;target_pfa", point, "pfa_theory", theory, scenario.seed)
    return table


# ---------------------------------------------------------------------------
# Output emission
# ---------------------------------------------------------------------------

def render_csv(table: MetricTable) -> str:
    buf = io.StringIO()
    buf.write(SCHEMA_STAMP + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in table.rows:
        writer.writerow(
            [
                row.experiment,
                row.sweep,
                row.point,
                row.metric,
                repr(row.mean),
                repr(row.std_error),
                row.trials,
                row.seed,
            ]
        )
    return buf.getvalue()


def parse_csv(text: str) -> list[MetricRow]:
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    reader = csv.DictReader(lines)
    out = []
    for rec in reader:
        out.append(
            MetricRow(
                experiment=rec["experiment"],
                sweep=rec["sweep"],
                point=rec["point"],
                metric=rec["metric"],
                mean=float(rec["mean"]),
                std_error=float(rec["std_error"]),
                trials=int(rec["trials"]),
                seed=int(rec["seed"]),
            )
        )
    return out


_PLOT_TEMPLATE = '''#!/usr/bin/env python3
"""Plot {experiment} metrics from {csv_name} (written by spatial-holes)."""
import csv
from collections import defaultdict

import matplotlib.pyplot as plt

rows = []
with open("{csv_name}", "r", encoding="utf-8") as fh:
    lines = [ln for ln in fh if not ln.startswith("#")]
for rec in csv.DictReader(lines):
    rows.append(rec)

series = defaultdict(list)
for rec in rows:
    axes = dict(part.split("=", 1) for part in rec["point"].split(";"))
    x_key = "{x_axis}"
    if x_key not in axes:
        continue
    group = rec["metric"] + "".join(
        f" {{k}}={{v}}" for k, v in sorted(axes.items()) if k != x_key
    )
    series[group].append((float(axes[x_key]), float(rec["mean"]), float(rec["std_error"])))

plt.figure(figsize=(7, 5))
for label, pts in sorted(series.items()):
    pts.sort()
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    es = [2 * p[2] for p in pts]
    plt.errorbar(xs, ys, yerr=es, marker="o", capsize=2, label=label)
plt.xlabel("{x_axis}")
plt.ylabel("mean (error bars: 2 std errors)")
plt.title("{experiment}")
plt.grid(True, alpha=0.4)
plt.legend(fontsize=7)
plt.tight_layout()
plt.savefig("{experiment}.png", dpi=150)
print("wrote {experiment}.png")
'''

_X_AXIS = {
    "leakage": "snr_db",
    "sumrate": "snr_db",
    "antenna-sweep": "n0",
    "fast-sensing": "eta",
    "fine-sensing": "target_pfa",
    "simulate": "snr_db",
}


def emit_outputs(tables, out_dir) -> list[str]:
    """Write one CSV and one plot script per table; deterministic names/bytes."""
    import pathlib

    out = pathlib.Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for table in tables:
        csv_name = f"{table.experiment}.csv"
        csv_path = out / csv_name
        csv_path.write_text(render_csv(table), encoding="utf-8")
        written.append(str(csv_path))
        script = _PLOT_TEMPLATE.format(
            experiment=table.experiment,
            csv_name=csv_name,
            x_axis=_X_AXIS.get(table.experiment, "snr_db"),
        )
        script_path = out / f"plot_{table.experiment}.py"
        script_path.write_text(script, encoding="utf-8")
        written.append(str(script_path))
    return written
