"""Coarse spatial-hole detection from the minimum eigenvalue of the stacked,
noise-normalized sample covariance, with Tracy-Widom threshold calibration.

Received vectors are stacked over a smoothing window of T consecutive
samples; L sliding windows form the covariance estimate.  A spatial hole
(inactive primary stream) leaves the noise-free signal covariance rank
deficient, so the minimum eigenvalue of the received covariance drops to
the noise floor and the test "lambda_min < eta" flags the hole.  The
threshold comes from the Tracy-Widom approximation to the extreme
eigenvalues of the white complex Wishart matrix that the noise-only
covariance follows.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import PchipInterpolator
from scipy.optimize import brentq

from . import _tw2_table
from .linalg import LinalgContractError, hermitian_eig, sample_covariance

_TW2_CDF = PchipInterpolator(_tw2_table.S_GRID, _tw2_table.CDF_VALUES, extrapolate=False)
_S_LO = float(_tw2_table.S_GRID[0])
_S_HI = float(_tw2_table.S_GRID[-1])
_F_LO = float(_tw2_table.CDF_VALUES[0])
_F_HI = float(_tw2_table.CDF_VALUES[-1])


@dataclass(frozen=True)
class StackedSamples:
    """L stacked vectors of dimension n0 * T built from sliding windows."""

    T: int
    L: int
    n0: int
    vectors: np.ndarray  # L x (n0 * T)


@dataclass(frozen=True)
class FastDecision:
    lambda_min: float
    threshold: float
    hole_present: bool   # lambda_min < threshold
    T: int
    L: int
    n0: int


def stack_samples(raw, T: int, L: int) -> StackedSamples:
    """Stack raw N0-dim vectors into L sliding windows of T consecutive samples.

    Window n (n = T-1 .. T+L-2) is [y[n]; y[n-1]; ...; y[n-T+1]], newest
    block first.  Needs at least T + L - 1 raw vectors.
    """
    y = np.asarray(raw, dtype=complex)
    if y.ndim == 1:
        y = y[:, None]
    if T < 1 or L < 1:
        raise ValueError("T and L must be at least 1")
    if y.shape[0] < T + L - 1:
        raise ValueError(
            f"need at least T + L - 1 = {T + L - 1} raw samples, got {y.shape[0]}"
        )
    n0 = y.shape[1]
    stacked = np.empty((L, n0 * T), dtype=complex)
    for idx, n in enumerate(range(T - 1, T + L - 1)):
        window = y[n - T + 1 : n + 1][::-1]  # newest first
        stacked[idx] = window.reshape(-1)
    return StackedSamples(T=T, L=L, n0=n0, vectors=stacked)


def min_eig_statistic(r_y: np.ndarray) -> float:
    """Smallest eigenvalue of a Hermitian (PSD) covariance matrix."""
    m = np.asarray(r_y, dtype=complex)
    scale = max(1.0, np.linalg.norm(m))
    if m.ndim != 2 or m.shape[0] != m.shape[1] or np.linalg.norm(m - m.conj().T) > 1e-9 * scale:
        raise LinalgContractError("min_eig_statistic needs a Hermitian matrix")
    return float(hermitian_eig(m).values[0])


def weyl_bounds(r_x: np.ndarray, r_z: np.ndarray) -> tuple[float, float]:
    """Weyl sandwich for lambda_min(R_X + R_Z).

    Returns (lambda_min(R_X) + lambda_min(R_Z), lambda_min(R_X) + lambda_max(R_Z))
    and verifies that lambda_min of the sum indeed falls inside.
    """
    a = np.asarray(r_x, dtype=complex)
    b = np.asarray(r_z, dtype=complex)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    wa = hermitian_eig(a).values
    wb = hermitian_eig(b).values
    lower = float(wa[0] + wb[0])
    upper = float(wa[0] + wb[-1])
    mid = float(hermitian_eig(a + b).values[0])
    slack = 1e-9 * max(1.0, abs(lower), abs(upper))
    if not (lower - slack <= mid <= upper + slack):
        raise AssertionError(
            f"Weyl inequality violated numerically: {lower} <= {mid} <= {upper}"
        )
    return lower, upper


def tw2_cdf(x: float) -> float:
    """Tracy-Widom order-2 CDF via the frozen table with monotone interpolation."""
    if x <= _S_LO:
        return 0.0
    if x >= _S_HI:
        return 1.0
    return float(_TW2_CDF(x))


def tw2_quantile(p: float) -> float:
    """Numerical inverse of tw2_cdf for p in (0, 1).

    Values of p beyond the tabulated CDF range (below ~1e-37 or above
    1 - 3e-9) clamp to the table endpoints.
    """
    if not 0.0 < p < 1.0:
        raise ValueError(f"quantile needs p in (0, 1), got {p}")
    if p <= _F_LO:
        return _S_LO
    if p >= _F_HI:
        return _S_HI
    return float(brentq(lambda s: float(_TW2_CDF(s)) - p, _S_LO, _S_HI, xtol=1e-12))


def _dims(L: int, T: int, n0: int, dim_convention: str) -> float:
    if dim_convention == "paper":
        return float(n0)
    if dim_convention == "stacked":
        return float(n0 * T)
    raise ValueError(f"dim_convention must be 'paper' or 'stacked', got {dim_convention!r}")


def fast_threshold(
    target_pfa: float, L: int, T: int, n0: int, dim_convention: str = "paper"
) -> float:
    """Tracy-Widom threshold for the minimum-eigenvalue test.

    eta = (1/L) (sqrt(LT) + sqrt(N)) (sqrt(1/LT) + sqrt(1/N))^(1/3) F2^{-1}(1 - PFA)
        + (1/L) (sqrt(LT) + sqrt(N))^2

    with N = N0 under the literal convention and N = N0*T under the
    stacked-dimension convention.
    """
    if not 0.0 < target_pfa < 1.0:
        raise ValueError("target_pfa must be in (0, 1)")
    if L < 1 or T < 1 or n0 < 1:
        raise ValueError("L, T, n0 must be at least 1")
    n = _dims(L, T, n0, dim_convention)
    lt = float(L * T)
    center = (np.sqrt(lt) + np.sqrt(n)) ** 2 / L
    scale = (np.sqrt(lt) + np.sqrt(n)) * (1.0 / np.sqrt(lt) + 1.0 / np.sqrt(n)) ** (1.0 / 3.0) / L
    return float(scale * tw2_quantile(1.0 - target_pfa) + center)


def tw_max_eig_exceedance(
    eta: float, L: int, T: int, n0: int, dim_convention: str = "paper"
) -> float:
    """Tracy-Widom approximation of Pr(lambda_max(R_Z) > eta)."""
    n = _dims(L, T, n0, dim_convention)
    lt = float(L * T)
    center = (np.sqrt(lt) + np.sqrt(n)) ** 2
    scale = (np.sqrt(lt) + np.sqrt(n)) * (1.0 / np.sqrt(lt) + 1.0 / np.sqrt(n)) ** (1.0 / 3.0)
    return 1.0 - tw2_cdf((L * eta - center) / scale)


def tw_min_eig_exceedance(
    eta: float, L: int, T: int, n0: int, dim_convention: str = "paper"
) -> float:
    """Tracy-Widom approximation of Pr(lambda_min(R_Z) > eta).

    The hard-edge scale constant (sqrt(1/LT) - sqrt(1/N))^(1/3) is negative
    (real cube root), which flips the inequality: F2 evaluated at the
    centered-and-scaled threshold IS the exceedance probability.
    """
    n = _dims(L, T, n0, dim_convention)
    lt = float(L * T)
    if lt <= n:
        raise ValueError("minimum-eigenvalue approximation needs LT > N")
    center = (np.sqrt(lt) - np.sqrt(n)) ** 2
    scale = (np.sqrt(lt) - np.sqrt(n)) * np.cbrt(1.0 / np.sqrt(lt) - 1.0 / np.sqrt(n))
    return tw2_cdf((L * eta - center) / scale)


def stacked_covariance(stacked: StackedSamples, noise_var: float) -> np.ndarray:
    """R_Y: noise-normalized covariance of the stacked vectors."""
    return sample_covariance(stacked.vectors, noise_var)


def detect_hole(stacked: StackedSamples, noise_var: float, eta: float) -> FastDecision:
    """Stage-one decision: a spatial hole is flagged when lambda_min(R_Y) < eta."""
    r_y = stacked_covariance(stacked, noise_var)
    lam = min_eig_statistic(r_y)
    return FastDecision(
        lambda_min=lam,
        threshold=float(eta),
        hole_present=bool(lam < eta),
        T=stacked.T,
        L=stacked.L,
        n0=stacked.n0,
    )


def write_threshold_table(path, rows) -> None:
    """Export threshold-calibration rows as CSV.

    Rows are (pfa_target, eta, L, T, N0, dim_convention) tuples, written
    under exactly those column names.
    """
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["pfa_target", "eta", "L", "T", "N0", "dim_convention"])
        for row in rows:
            writer.writerow(list(row))
