import os
import subprocess
import sys
from functools import partial

import numpy as np
import pytest

from spatial_holes.harness import (
    RunningStat,
    Scenario,
    aggregate_trials,
    emit_outputs,
    matched_primary_config,
    noise_var_for_snr_db,
    parse_csv,
    render_csv,
    run_antenna_sweep_experiment,
    run_fast_sensing_experiment,
    run_fine_sensing_experiment,
    run_leakage_experiment,
    run_sumrate_experiment,
)

from conftest import reference_config


def tiny_scenario(**kwargs):
    defaults = dict(
        cfg=reference_config(),
        trials=6,
        seed=11,
        snr_grid_db=(0.0, 10.0),
        smoothing_factors=(3,),
        fine_T_values=(8,),
        fusion_antennas=(3,),
        pfa_targets=(0.1, 0.3),
    )
    defaults.update(kwargs)
    return Scenario(**defaults)


class TestRunningStat:
    def test_matches_numpy(self):
        rng = np.random.default_rng(0)
        xs = rng.standard_normal(500)
        stat = RunningStat()
        for x in xs:
            stat.add(x)
        assert stat.mean == pytest.approx(np.mean(xs), rel=1e-12)
        want_se = np.std(xs, ddof=1) / np.sqrt(len(xs))
        assert stat.std_error == pytest.approx(want_se, rel=1e-12)

    def test_merge_any_split(self):
        rng = np.random.default_rng(1)
        xs = rng.standard_normal(300)
        whole = RunningStat()
        for x in xs:
            whole.add(x)
        for cut in (1, 50, 299):
            a, b = RunningStat(), RunningStat()
            for x in xs[:cut]:
                a.add(x)
            for x in xs[cut:]:
                b.add(x)
            a.merge(b)
            assert a.n == whole.n
            assert a.mean == pytest.approx(whole.mean, rel=1e-12)
            assert a.std_error == pytest.approx(whole.std_error, rel=1e-10)


def _square_trial(trial: int) -> dict:
    return {"x": float(trial * trial)}


class TestAggregateTrials:
    def test_serial_values(self):
        stats = aggregate_trials(_square_trial, 10)
        assert stats["x"].n == 10
        assert stats["x"].mean == pytest.approx(np.mean([t * t for t in range(10)]))

    def test_parallel_matches_serial(self):
        serial = aggregate_trials(_square_trial, 200, workers=1, chunk=16)
        parallel = aggregate_trials(_square_trial, 200, workers=2, chunk=16)
        assert serial["x"].mean == parallel["x"].mean
        assert serial["x"].m2 == parallel["x"].m2

    def test_zero_trials_rejected(self):
        with pytest.raises(ValueError):
            aggregate_trials(_square_trial, 0)


class TestScenario:
    def test_validation(self):
        sc = tiny_scenario(trials=0)
        assert any("trials" in p for p in sc.validate())
        sc = tiny_scenario(snr_grid_db=())
        assert any("SNR" in p for p in sc.validate())
        with pytest.raises(ValueError):
            run_leakage_experiment(tiny_scenario(trials=0))

    def test_noise_var_for_snr(self):
        cfg = reference_config()
        assert noise_var_for_snr_db(cfg, 10.0) == pytest.approx(1.0)
        assert noise_var_for_snr_db(cfg, 0.0) == pytest.approx(10.0)

    def test_matched_primary_config(self):
        cfg4 = matched_primary_config(4)
        assert cfg4.K == 4
        assert cfg4.total_primary_streams == 4
        assert cfg4.secondary.N == 4
        assert cfg4.validate() == []
        # alignment stays proper: M + N >= K + 1 for single-stream pairs
        assert cfg4.pairs[0].M + cfg4.pairs[0].N >= cfg4.K + 1


class TestLeakageExperiment:
    def test_orderings(self):
        table = run_leakage_experiment(tiny_scenario(trials=12))
        for point in {r.point for r in table.rows}:
            zf = table.metric("cr_to_primary_leakage_zf_w", point)[0].mean
            small = table.metric("cr_to_primary_leakage_small_w", point)[0].mean
            assert zf <= 1e-9 * 10.0
            assert small > 1e3 * max(zf, 1e-30)

    def test_determinism_byte_identical(self):
        a = render_csv(run_leakage_experiment(tiny_scenario()))
        b = render_csv(run_leakage_experiment(tiny_scenario()))
        assert a == b

    def test_seed_changes_output(self):
        a = render_csv(run_leakage_experiment(tiny_scenario(seed=1)))
        b = render_csv(run_leakage_experiment(tiny_scenario(seed=2)))
        assert a != b


class TestSumrateExperiment:
    def test_zf_does_not_change_primary_rates(self):
        table = run_sumrate_experiment(tiny_scenario(trials=10))
        for point in {r.point for r in table.rows}:
            without = table.metric("primary_sumrate_without_cr", point)[0].mean
            with_zf = table.metric("primary_sumrate_with_cr_zf", point)[0].mean
            # per-realization equality forced by the null-space precoder
            assert with_zf == pytest.approx(without, abs=1e-9)

    def test_small_m0_hurts_at_high_snr(self):
        table = run_sumrate_experiment(tiny_scenario(trials=30, snr_grid_db=(25.0,)))
        point = table.rows[0].point
        without = table.metric("primary_sumrate_without_cr", point)[0]
        small = table.metric("primary_sumrate_with_cr_small", point)[0]
        gap_se = np.hypot(without.std_error, small.std_error)
        assert without.mean - small.mean >= 3 * gap_se


class TestAntennaSweep:
    def test_sinr_monotone_in_n0(self):
        table = run_antenna_sweep_experiment(tiny_scenario(trials=25), n0_values=(3, 4, 5, 6))
        means = [table.metric("secondary_sinr", f"n0={n}")[0].mean for n in (3, 4, 5, 6)]
        # coupled sub-block draws make this monotone per realization
        assert all(b >= a for a, b in zip(means, means[1:]))


class TestFastSensingExperiment:
    def test_bounds_sandwich_every_eta(self):
        table = run_fast_sensing_experiment(tiny_scenario(trials=40))
        points = sorted({r.point for r in table.rows if "eta=" in r.point})
        assert points
        for point in points:
            lo = table.metric("bound_lower", point)[0].mean
            mid = table.metric("pfa_hole1", point)[0].mean
            hi = table.metric("bound_upper", point)[0].mean
            assert lo - 1e-12 <= mid <= hi + 1e-12

    def test_pfa_monotone_in_eta(self):
        table = run_fast_sensing_experiment(tiny_scenario(trials=40))
        rows = table.metric("pfa_hole1")
        etas = [float(r.point.split("eta=")[1]) for r in rows]
        vals = [r.mean for r in rows]
        order = np.argsort(etas)
        sorted_vals = np.array(vals)[order]
        assert all(b <= a + 1e-12 for a, b in zip(sorted_vals, sorted_vals[1:]))


class TestFineSensingExperiment:
    def test_theory_overlay_present(self):
        table = run_fine_sensing_experiment(tiny_scenario(trials=25))
        emp = table.metric("pfa_empirical")
        theory = table.metric("pfa_theory")
        assert len(emp) == len(theory) > 0
        for e, t in zip(emp, theory):
            assert e.point == t.point
            # small-sample check: empirical within 4 binomial SEs of theory
            se = max(np.sqrt(t.mean * (1 - t.mean) / e.trials), 1e-3)
            assert abs(e.mean - t.mean) <= 4 * se + 0.05


class TestEmission:
    def test_files_and_roundtrip(self, tmp_path):
        table = run_leakage_experiment(tiny_scenario())
        files = emit_outputs([table], tmp_path)
        csv_path = tmp_path / "leakage.csv"
        assert str(csv_path) in files
        text = csv_path.read_text()
        assert text.startswith("# spatial-holes metrics schema v1\n")
        rows = parse_csv(text)
        assert len(rows) == len(table.rows)
        assert rows[0].mean == table.rows[0].mean

    def test_rerun_idempotent(self, tmp_path):
        table = run_leakage_experiment(tiny_scenario())
        emit_outputs([table], tmp_path)
        first = (tmp_path / "leakage.csv").read_bytes()
        emit_outputs([table], tmp_path)
        assert (tmp_path / "leakage.csv").read_bytes() == first

    def test_plot_script_runs(self, tmp_path):
        table = run_leakage_experiment(tiny_scenario())
        emit_outputs([table], tmp_path)
        env = dict(os.environ, MPLBACKEND="Agg")
        proc = subprocess.run(
            [sys.executable, "plot_leakage.py"],
            cwd=tmp_path,
            env=env,
            capture_output=True,
            text=True,
            timeout=120,
        )
        assert proc.returncode == 0, proc.stderr
        assert (tmp_path / "leakage.png").exists()
