import numpy as np
import pytest

from spatial_holes.ia import (
    alignment_residual,
    direct_link_rank,
    distributed_ia,
    pair_rate,
    relative_leakage,
)
from spatial_holes.model import (
    ActivityPattern,
    ChannelSet,
    NetworkConfig,
    PairConfig,
    SecondaryConfig,
    draw_channels,
    make_rng,
)

from conftest import reference_config


def single_pair_config():
    return NetworkConfig(
        pairs=(PairConfig(M=2, N=2, d=1, p=10.0),),
        secondary=SecondaryConfig(M=2, N=2, d=1, p=10.0),
        noise_var=1.0,
    )


def solve(cfg, seed, iterations=20):
    channels = draw_channels(cfg, make_rng(seed))
    return channels, distributed_ia(channels, cfg, iterations)


class TestDistributedIA:
    def test_single_pair_no_interference(self):
        cfg = single_pair_config()
        channels, sol = solve(cfg, 0, iterations=1)
        assert sol.final_leakage <= 1e-12
        assert alignment_residual(sol, channels, cfg) == 0.0

    def test_orthonormal_columns(self, cfg3):
        channels, sol = solve(cfg3, 1)
        for mats in (sol.V, sol.U):
            for m in mats:
                gram = m.conj().T @ m
                assert np.linalg.norm(gram - np.eye(m.shape[1])) <= 1e-8

    def test_common_power_scaling_keeps_subspaces(self, cfg3):
        channels = draw_channels(cfg3, make_rng(2))
        sol_a = distributed_ia(channels, cfg3, 10)
        doubled = NetworkConfig(
            pairs=tuple(PairConfig(p.M, p.N, p.d, 2 * p.p) for p in cfg3.pairs),
            secondary=cfg3.secondary,
            noise_var=cfg3.noise_var,
        )
        sol_b = distributed_ia(channels, doubled, 10)
        for a, b in zip(sol_a.V, sol_b.V):
            # same 1-D subspace up to phase
            assert abs(abs(a.conj().T @ b)[0, 0] - 1.0) <= 1e-9

    def test_leakage_history_mostly_decreasing(self, cfg3):
        drops = 0
        total = 0
        for seed in range(20):
            _, sol = solve(cfg3, seed)
            hist = np.array(sol.leakage_history)
            diffs = np.diff(hist)
            drops += int(np.sum(diffs <= 1e-9 * np.maximum(hist[:-1], 1e-30)))
            total += len(diffs)
        assert drops / total >= 0.99

    def test_typical_convergence_at_20_iterations(self, cfg3):
        ratios = []
        for seed in range(60):
            channels, sol = solve(cfg3, seed)
            ratios.append(relative_leakage(sol, channels, cfg3))
        assert np.median(ratios) <= 1e-2

    def test_iteration_budget_respected(self, cfg3):
        _, sol = solve(cfg3, 3, iterations=7)
        assert sol.iterations_used == 7
        assert len(sol.leakage_history) == 7

    def test_dimension_mismatch_rejected(self, cfg3):
        channels = draw_channels(cfg3, make_rng(4))
        bad = dict(channels.matrices)
        bad[(1, 2)] = bad[(1, 2)][:, :1]
        with pytest.raises(ValueError, match="shape"):
            distributed_ia(ChannelSet(matrices=bad, K=cfg3.K), cfg3, 5)

    def test_bad_iteration_count(self, cfg3):
        channels = draw_channels(cfg3, make_rng(5))
        with pytest.raises(ValueError):
            distributed_ia(channels, cfg3, 0)


class TestAlignmentResidual:
    def test_random_precoders_not_aligned(self, cfg3):
        channels = draw_channels(cfg3, make_rng(6))
        sol = distributed_ia(channels, cfg3, 1)
        # after one sweep alignment is generically incomplete
        assert alignment_residual(sol, channels, cfg3) > 0.0

    def test_residual_scales_with_leakage(self, cfg3):
        channels, sol = solve(cfg3, 7, iterations=200)
        res = alignment_residual(sol, channels, cfg3)
        # converged instance: residual and per-pair leakage vanish together
        assert res <= 1e-4
        assert sol.final_leakage <= 10.0 * 3 * res**2 + 1e-12


class TestDirectLinkRank:
    def test_converged_rank_one_per_pair(self, cfg3):
        ranks = []
        for seed in range(20):
            channels, sol = solve(cfg3, seed)
            ranks.extend(direct_link_rank(sol, channels, k) for k in (1, 2, 3))
        assert all(r == 1 for r in ranks)

    def test_forced_deficiency(self):
        cfg = single_pair_config()
        channels = draw_channels(cfg, make_rng(8))
        sol = distributed_ia(channels, cfg, 1)
        # rebuild the direct channel so the precoder column is in its null space
        v = sol.V[0][:, 0]
        perp = np.array([-np.conj(v[1]), np.conj(v[0])])
        mats = dict(channels.matrices)
        mats[(1, 1)] = np.outer(np.ones(2), perp.conj())
        crooked = ChannelSet(matrices=mats, K=1)
        assert direct_link_rank(sol, crooked, 1) == 0

    def test_identity_channel(self):
        cfg = single_pair_config()
        channels = draw_channels(cfg, make_rng(9))
        mats = {key: np.eye(2, dtype=complex) for key in channels.matrices}
        sol = distributed_ia(ChannelSet(matrices=mats, K=1), cfg, 1)
        assert direct_link_rank(sol, ChannelSet(matrices=mats, K=1), 1) == 1


class TestPairRate:
    def test_scalar_shannon_case(self):
        cfg = single_pair_config()
        channels = draw_channels(cfg, make_rng(10))
        sol = distributed_ia(channels, cfg, 5)
        act = ActivityPattern.all_active(cfg)
        g = (sol.U[0].conj().T @ channels.H(1, 1) @ sol.V[0])[0, 0]
        snr = cfg.pairs[0].p * abs(g) ** 2 / cfg.noise_var
        rate = pair_rate(sol, channels, cfg, act)[0]
        assert rate == pytest.approx(np.log2(1.0 + snr), rel=1e-9)

    def test_inactive_pair_reports_zero(self, cfg3):
        channels, sol = solve(cfg3, 11)
        act = ActivityPattern.with_silent_pairs(cfg3, [2])
        rates = pair_rate(sol, channels, cfg3, act)
        assert rates[1] == 0.0
        assert rates[0] > 0.0 and rates[2] > 0.0

    def test_sumrate_increases_with_snr(self, cfg3):
        means = []
        for noise_var in (10.0, 1.0, 0.1):
            cfg = cfg3.replace_noise_var(noise_var)
            total = 0.0
            for seed in range(25):
                channels, sol = solve(cfg, seed)
                total += pair_rate(sol, channels, cfg, ActivityPattern.all_active(cfg)).sum()
            means.append(total / 25)
        assert means[0] < means[1] < means[2]
