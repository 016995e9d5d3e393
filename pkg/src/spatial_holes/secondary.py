"""Secondary link design: zero-forcing precoder, trace-minimizing fallback,
max-SINR decoder, leakage/SINR/rate evaluation and the Kantorovich SINR bounds.

The zero-forcing route stacks the effective secondary-to-primary rows
U[k]^H H[k0] of every active primary stream into P and transmits in the
null space of P, which nullifies the leakage at every active primary
receiver by construction.  When P has no null space the fallback minimizes
the total leakage Tr[V0^H Q V0] over orthonormal V0, attained by the
eigenvectors of the smallest eigenvalues of Q.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import (
    NULLSPACE_TOL,
    hermitian_eig,
    null_space_basis,
    solve_hermitian_pd,
)
from .model import ActivityPattern, ChannelSet, NetworkConfig


class FeasibilityError(ValueError):
    """Zero forcing is not available for the requested stream count."""


@dataclass(frozen=True)
class SecondaryDesign:
    V0: np.ndarray                    # M^[0] x d^[0], orthonormal columns
    U0: np.ndarray                    # N^[0] x d^[0], unit-norm columns
    sinr_per_stream: np.ndarray
    leakage_per_receiver: np.ndarray  # watts, receivers 1..K
    mode: str                         # "zero-forcing" | "trace-min"


def stack_interference_matrix(
    channels: ChannelSet, ia, activity: ActivityPattern
) -> np.ndarray:
    """Stack rows u_l^[k]H H[k0] for every active primary stream (pair-major).

    Result has sum_i d_A^[i] rows and M^[0] columns; silent streams
    contribute no row.  Zero active streams give a 0-row matrix.
    """
    m0 = channels.H(1, 0).shape[1] if channels.K >= 1 else 0
    rows = []
    for k, l in activity.active_streams():
        rows.append(ia.U[k - 1][:, l].conj() @ channels.H(k, 0))
    if not rows:
        return np.zeros((0, m0), dtype=complex)
    return np.vstack(rows)


def zf_feasible(m0: int, d0: int, activity: ActivityPattern) -> bool:
    """Antenna condition for zero interference: M^[0] >= d^[0] + sum d_A."""
    return m0 >= d0 + activity.total_active


def zf_precoder(p: np.ndarray, d0: int, tol: float = NULLSPACE_TOL) -> np.ndarray:
    """d0 orthonormal columns spanning (part of) the null space of P.

    Raises FeasibilityError when the null space is smaller than d0; the
    trace-minimizing underlay_precoder is the fallback in that case.
    """
    basis = null_space_basis(np.asarray(p, dtype=complex), tol=tol)
    if basis.shape[1] < d0:
        raise FeasibilityError(
            f"null space of the stacked interference matrix has dimension {basis.shape[1]} "
            f"< d0={d0}; zero forcing infeasible, use underlay_precoder instead"
        )
    return basis[:, :d0]


def leakage_gram(
    channels: ChannelSet, ia, cfg: NetworkConfig, activity: ActivityPattern
) -> np.ndarray:
    """Q = (p0/d0) sum over active streams of H[k0]^H u u^H H[k0] (M0 x M0).

    Tr[V0^H Q V0] is the total leakage the secondary causes at the active
    primary receivers.
    """
    sec = cfg.secondary
    q = np.zeros((sec.M, sec.M), dtype=complex)
    weight = sec.p / max(sec.d, 1)
    for k, l in activity.active_streams():
        row = channels.H(k, 0).conj().T @ ia.U[k - 1][:, l]
        q += weight * np.outer(row, row.conj())
    return (q + q.conj().T) / 2.0


def underlay_precoder(
    channels: ChannelSet,
    ia,
    cfg: NetworkConfig,
    activity: ActivityPattern,
    d0: int,
) -> np.ndarray:
    """Trace-minimizing precoder: eigenvectors of the d0 smallest eigenvalues of Q."""
    if d0 > cfg.secondary.M:
        raise ValueError(f"d0={d0} exceeds secondary transmit antennas M0={cfg.secondary.M}")
    q = leakage_gram(channels, ia, cfg, activity)
    return hermitian_eig(q).vectors[:, :d0]


def cr_leakage(
    v0: np.ndarray, channels: ChannelSet, ia, cfg: NetworkConfig, k: int
) -> float:
    """Interference power the secondary leaks into primary receiver k.

    Tr[(p0/d0) U[k]^H H[k0] V0 V0^H H[k0]^H U[k]], nonnegative and linear
    in p^[0].
    """
    sec = cfg.secondary
    m = ia.U[k - 1].conj().T @ channels.H(k, 0) @ v0
    return (sec.p / max(sec.d, 1)) * float(np.linalg.norm(m) ** 2)


def interference_covariance(
    l: int,
    channels: ChannelSet,
    ia,
    cfg: NetworkConfig,
    v0: np.ndarray,
    activity: ActivityPattern,
) -> np.ndarray:
    """Covariance B_l seen by secondary stream l (0-based) at the CR receiver.

    Active primary streams plus the other secondary streams plus noise;
    the own-stream term is excluded.  Hermitian PD because noise_var > 0.
    """
    sec = cfg.secondary
    n0 = sec.N
    b = cfg.noise_var * np.eye(n0, dtype=complex)
    for j, s in activity.active_streams():
        pair = cfg.pairs[j - 1]
        col = channels.H(0, j) @ ia.V[j - 1][:, s]
        b += (pair.p / pair.d) * np.outer(col, col.conj())
    h00 = channels.H(0, 0)
    for m in range(v0.shape[1]):
        if m == l:
            continue
        col = h00 @ v0[:, m]
        b += (sec.p / sec.d) * np.outer(col, col.conj())
    return (b + b.conj().T) / 2.0


def max_sinr_decoder(b_l: np.ndarray, h00: np.ndarray, v0_col: np.ndarray) -> np.ndarray:
    """SINR-maximizing unit decoder B_l^{-1} H[00] v / ||B_l^{-1} H[00] v||."""
    x = solve_hermitian_pd(b_l, h00 @ v0_col)
    return x / np.linalg.norm(x)


def max_sinr_value(
    b_l: np.ndarray, h00: np.ndarray, v0_col: np.ndarray, cfg: NetworkConfig
) -> float:
    """Closed-form maximum SINR (p0/d0) v^H H^H B_l^{-1} H v."""
    sec = cfg.secondary
    h = h00 @ v0_col
    return (sec.p / sec.d) * float(np.real(h.conj() @ solve_hermitian_pd(b_l, h)))


def sinr_of_decoder(
    u: np.ndarray, b_l: np.ndarray, h00: np.ndarray, v0_col: np.ndarray, cfg: NetworkConfig
) -> float:
    """Rayleigh-quotient SINR of an arbitrary decoder column (scale invariant)."""
    sec = cfg.secondary
    num = abs(u.conj() @ (h00 @ v0_col)) ** 2
    den = np.real(u.conj() @ b_l @ u)
    return (sec.p / sec.d) * float(num / den)


def secondary_sinr(
    l: int,
    design: SecondaryDesign,
    channels: ChannelSet,
    ia,
    cfg: NetworkConfig,
    activity: ActivityPattern,
) -> float:
    """SINR of secondary stream l with the design's decoder column."""
    b = interference_covariance(l, channels, ia, cfg, design.V0, activity)
    return sinr_of_decoder(design.U0[:, l], b, channels.H(0, 0), design.V0[:, l], cfg)


def kantorovich_bounds(h_unit: np.ndarray, b_l: np.ndarray) -> tuple[float, float]:
    """Kantorovich sandwich for the quadratic form h^H B^{-1} h at unit-norm h.

    Returns (lower, upper) with lower = 1 / (h^H B h) and
    upper = (lam_max + lam_min)^2 / (4 lam_max lam_min) * lower.
    The p0/d0 stream-power factor is applied by the caller.
    """
    norm = np.linalg.norm(h_unit)
    if norm == 0:
        raise ValueError("h must be nonzero")
    h = h_unit / norm
    quad = float(np.real(h.conj() @ b_l @ h))
    lower = 1.0 / quad
    w = hermitian_eig(b_l).values
    lam_min, lam_max = float(w[0]), float(w[-1])
    upper = ((lam_max + lam_min) ** 2 / (4.0 * lam_max * lam_min)) * lower
    return lower, upper


def design_secondary(
    channels: ChannelSet,
    ia,
    cfg: NetworkConfig,
    activity: ActivityPattern,
    mode: str | None = None,
) -> SecondaryDesign:
    """Build the full secondary design (precoder, per-stream decoders, metrics).

    mode None picks zero forcing when feasible and the trace-min fallback
    otherwise; "zero-forcing" / "trace-min" force the choice.
    """
    sec = cfg.secondary
    d0 = sec.d
    if mode is None:
        mode = "zero-forcing" if zf_feasible(sec.M, d0, activity) else "trace-min"
    if mode == "zero-forcing":
        p = stack_interference_matrix(channels, ia, activity)
        v0 = zf_precoder(p, d0)
    elif mode == "trace-min":
        v0 = underlay_precoder(channels, ia, cfg, activity, d0)
    else:
        raise ValueError(f"unknown mode {mode!r}")

    h00 = channels.H(0, 0)
    cols = []
    sinrs = []
    for l in range(d0):
        b = interference_covariance(l, channels, ia, cfg, v0, activity)
        u = max_sinr_decoder(b, h00, v0[:, l])
        cols.append(u)
        sinrs.append(sinr_of_decoder(u, b, h00, v0[:, l], cfg))
    u0 = np.stack(cols, axis=1) if cols else np.zeros((sec.N, 0), dtype=complex)

    leakage = np.array([cr_leakage(v0, channels, ia, cfg, k) for k in range(1, cfg.K + 1)])
    return SecondaryDesign(
        V0=v0,
        U0=u0,
        sinr_per_stream=np.array(sinrs),
        leakage_per_receiver=leakage,
        mode=mode,
    )


def secondary_rate(design: SecondaryDesign) -> float:
    """sum_l log2(1 + SINR_l); 0 when the secondary sends no stream."""
    return float(np.sum(np.log2(1.0 + design.sinr_per_stream)))


def primary_to_secondary_interference(
    design: SecondaryDesign,
    channels: ChannelSet,
    ia,
    cfg: NetworkConfig,
    activity: ActivityPattern,
) -> float:
    """Residual primary interference power after the secondary decoder columns."""
    total = 0.0
    for l in range(design.U0.shape[1]):
        u = design.U0[:, l]
        for j, s in activity.active_streams():
            pair = cfg.pairs[j - 1]
            col = channels.H(0, j) @ ia.V[j - 1][:, s]
            total += (pair.p / pair.d) * float(abs(u.conj() @ col) ** 2)
    return total
