"""Distributed interference alignment for the primary network.

Alternating minimum-leakage iteration: each receiver k takes as decoder
columns the eigenvectors of the smallest eigenvalues of its interference
covariance sum_{j != k} (p_j / d_j) H[kj] V_j V_j^H H[kj]^H, then the roles
swap on the reciprocal channels (reciprocal of H is H^H) so the decoders
act as precoders of the reverse network.  Runs for a fixed iteration
budget; one iteration is a forward (decoder) plus reverse (precoder) sweep.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import RANK_TOL, hermitian_eig
from .model import ActivityPattern, ChannelSet, NetworkConfig


@dataclass(frozen=True)
class IASolution:
    """Primary precoders/decoders with orthonormal columns plus convergence info."""

    V: tuple[np.ndarray, ...]   # V[k-1]: M^[k] x d^[k]
    U: tuple[np.ndarray, ...]   # U[k-1]: N^[k] x d^[k]
    iterations_used: int
    final_leakage: float        # watts, forward network, after the last sweep
    leakage_history: tuple[float, ...]  # leakage after each iteration


def _interference_covariance(channels, cfg, precoders, rx: int, reverse: bool) -> np.ndarray:
    """Forward: covariance seen by receiver rx.  Reverse: reciprocal network."""
    K = cfg.K
    dim = cfg.pairs[rx - 1].N if not reverse else cfg.pairs[rx - 1].M
    q = np.zeros((dim, dim), dtype=complex)
    for tx in range(1, K + 1):
        if tx == rx:
            continue
        pair = cfg.pairs[tx - 1]
        if reverse:
            a = channels.H(tx, rx).conj().T @ precoders[tx - 1]
        else:
            a = channels.H(rx, tx) @ precoders[tx - 1]
        q += (pair.p / pair.d) * (a @ a.conj().T)
    return (q + q.conj().T) / 2.0


def _total_leakage(channels, cfg, V, U) -> float:
    leak = 0.0
    for k in range(1, cfg.K + 1):
        q = _interference_covariance(channels, cfg, V, k, reverse=False)
        leak += float(np.real(np.trace(U[k - 1].conj().T @ q @ U[k - 1])))
    return leak


def distributed_ia(channels: ChannelSet, cfg: NetworkConfig, iterations: int = 20) -> IASolution:
    """Run the alternating min-leakage iteration for a fixed budget.

    Precoders start from the leading columns of the identity; every update
    keeps columns orthonormal because they come from a Hermitian
    eigendecomposition.  K = 1 has no interference, so any orthonormal
    basis is already aligned and the leakage 0 is reported immediately.
    """
    if iterations < 1:
        raise ValueError("iterations must be at least 1")
    K = cfg.K
    for k in range(1, K + 1):
        pair = cfg.pairs[k - 1]
        for tx in range(1, K + 1):
            got = channels.H(k, tx).shape
            want = (pair.N, cfg.pairs[tx - 1].M)
            if got != want:
                raise ValueError(f"channel H[{k}][{tx}] has shape {got}, expected {want}")

    V = [np.eye(p.M, p.d, dtype=complex) for p in cfg.pairs]
    U = [np.eye(p.N, p.d, dtype=complex) for p in cfg.pairs]

    history = []
    for _ in range(iterations):
        for k in range(1, K + 1):
            q = _interference_covariance(channels, cfg, V, k, reverse=False)
            U[k - 1] = hermitian_eig(q).vectors[:, : cfg.pairs[k - 1].d]
        for k in range(1, K + 1):
            q = _interference_covariance(channels, cfg, U, k, reverse=True)
            V[k - 1] = hermitian_eig(q).vectors[:, : cfg.pairs[k - 1].d]
        history.append(_total_leakage(channels, cfg, V, U))

    # refresh the decoders so they are the minimizers for the final precoders
    for k in range(1, K + 1):
        q = _interference_covariance(channels, cfg, V, k, reverse=False)
        U[k - 1] = hermitian_eig(q).vectors[:, : cfg.pairs[k - 1].d]
    final = _total_leakage(channels, cfg, V, U)

    return IASolution(
        V=tuple(V),
        U=tuple(U),
        iterations_used=iterations,
        final_leakage=final,
        leakage_history=tuple(history),
    )


def alignment_residual(solution: IASolution, channels: ChannelSet, cfg: NetworkConfig) -> float:
    """max over k != j of ||U[k]^H H[kj] V[j]||_F; 0 for K = 1 (empty max)."""
    worst = 0.0
    for k in range(1, cfg.K + 1):
        for j in range(1, cfg.K + 1):
            if j == k:
                continue
            m = solution.U[k - 1].conj().T @ channels.H(k, j) @ solution.V[j - 1]
            worst = max(worst, float(np.linalg.norm(m)))
    return worst


def relative_leakage(solution: IASolution, channels: ChannelSet, cfg: NetworkConfig) -> float:
    """Residual interference power over desired signal power, post-decoder.

    Both sides carry the per-stream power weights p/d, so the ratio is the
    fraction of signal power the leaked interference amounts to.
    """
    leak = 0.0
    signal = 0.0
    for k in range(1, cfg.K + 1):
        u = solution.U[k - 1]
        for j in range(1, cfg.K + 1):
            pair = cfg.pairs[j - 1]
            m = u.conj().T @ channels.H(k, j) @ solution.V[j - 1]
            power = (pair.p / pair.d) * float(np.linalg.norm(m) ** 2)
            if j == k:
                signal += power
            else:
                leak += power
    return leak / signal


def direct_link_rank(
    solution: IASolution, channels: ChannelSet, k: int, rank_tol: float = RANK_TOL
) -> int:
    """Numerical rank of the effective direct matrix U[k]^H H[kk] V[k]."""
    m = solution.U[k - 1].conj().T @ channels.H(k, k) @ solution.V[k - 1]
    s = np.linalg.svd(m, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > rank_tol * s[0]))


def pair_rate(
    solution: IASolution,
    channels: ChannelSet,
    cfg: NetworkConfig,
    activity: ActivityPattern,
    secondary_design=None,
) -> np.ndarray:
    """Per-pair achievable rate log2 det(I + S C^{-1}) in bits/s/Hz.

    S is the desired-signal covariance of pair k's active streams after its
    decoder; C collects residual interference from the other pairs' active
    streams, the secondary transmission when a design is supplied, and
    noise.  Pairs with no active stream report 0.
    """
    rates = np.zeros(cfg.K)
    for k in range(1, cfg.K + 1):
        pair = cfg.pairs[k - 1]
        own = [l for l in range(pair.d) if activity.is_active(k, l)]
        if not own:
            continue
        u = solution.U[k - 1]
        nk = pair.N
        c_pre = cfg.noise_var * np.eye(nk, dtype=complex)
        for j, l in activity.active_streams():
            if j == k:
                continue
            other = cfg.pairs[j - 1]
            col = channels.H(k, j) @ solution.V[j - 1][:, l]
            c_pre += (other.p / other.d) * np.outer(col, col.conj())
        if secondary_design is not None:
            sec = cfg.secondary
            g = channels.H(k, 0) @ secondary_design.V0
            c_pre += (sec.p / sec.d) * (g @ g.conj().T)
        c = u.conj().T @ c_pre @ u
        c = (c + c.conj().T) / 2.0

        eff = u.conj().T @ channels.H(k, k) @ solution.V[k - 1][:, own]
        s = (pair.p / pair.d) * (eff @ eff.conj().T)

        sign, logdet_num = np.linalg.slogdet(c + s)
        sign_c, logdet_den = np.linalg.slogdet(c)
        if sign_c <= 0:
            raise np.linalg.LinAlgError(f"interference-plus-noise covariance of pair {k} is singular")
        rates[k - 1] = (logdet_num - logdet_den) / np.log(2.0)
    return rates
