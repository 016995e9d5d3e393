"""Per-stream identification of inactive primary streams (spatial-hole indices).

Stage two of the sensing pipeline: for every primary stream a unit sensing
vector is built that is exactly orthogonal to all other received stream
directions (orthogonal-projection residual), the received samples are
projected onto it, and a GLRT with the signal variance replaced by its MLE
decides activity.  The false-alarm probability of the GLRT statistic has a
closed form through the two real branches of the Lambert W function and
the regularized lower incomplete gamma function.

Default sampling convention ("real"): each complex projected sample is
mapped to sqrt(2) * Re(.), a real scalar whose variance under noise is
exactly noise_var, so the normalized energy follows chi^2 with one degree
of freedom per sample.  The "complex" convention keeps both quadratures
(2T real degrees of freedom from T complex samples).
"""

from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammainc

from .fast_sensing import FastDecision, detect_hole, fast_threshold, stack_samples
from .linalg import SingularMatrixError, orthogonal_projector
from .model import ChannelSet

_INV_E = -1.0 / math.e


class DegenerateDirectionError(ValueError):
    """The desired direction lies in the span of the other streams."""


# ---------------------------------------------------------------------------
# Lambert W, real branches 0 and -1
# ---------------------------------------------------------------------------

def _halley(w: float, z: float) -> float:
    for _ in range(100):
        e = math.exp(w)
        f = w * e - z
        if abs(f) <= 1e-13 * max(abs(z), 1e-300):
            break
        denom = e * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0)
        step = f / denom
        w -= step
        if abs(step) <= 1e-16 * (2.0 + abs(w)):
            break
    return w


def lambert_w(branch: int, z: float) -> float:
    """Real Lambert W: solves w * exp(w) = z on branch 0 or -1.

    Branch 0 needs z >= -1/e and returns w >= -1; branch -1 needs
    -1/e <= z < 0 and returns w <= -1.  Residual |w e^w - z| <= 1e-12 |z|.
    """
    if branch not in (0, -1):
        raise ValueError(f"branch must be 0 or -1, got {branch}")
    if not np.isfinite(z):
        raise ValueError("z must be finite")
    if z < _INV_E - 1e-15:
        raise ValueError(f"z={z} below the branch point -1/e")

    q = max(math.e * z + 1.0, 0.0)
    if branch == 0:
        if z == 0.0:
            return 0.0
        if q <= 1e-30:
            return -1.0
        if q < 0.5:
            p = math.sqrt(2.0 * q)
            w = -1.0 + p - p * p / 3.0 + 11.0 * p ** 3 / 72.0
        elif z < math.e:
            w = z / (1.0 + z) if z > -0.2 else z * math.exp(-z)
        else:
            lz = math.log(z)
            w = lz - math.log(lz)
        w = _halley(w, z)
        return max(w, -1.0) if q <= 4e-16 else w

    # branch -1
    if z >= 0.0:
        raise ValueError(f"branch -1 needs z < 0, got z={z}")
    if q <= 1e-30:
        return -1.0
    if q < 0.08:
        p = math.sqrt(2.0 * q)
        w = -1.0 - p - p * p / 3.0 - 11.0 * p ** 3 / 72.0
    else:
        l1 = math.log(-z)
        w = l1 - math.log(-l1)
    w = _halley(w, z)
    return min(w, -1.0) if q <= 4e-16 else w


# ---------------------------------------------------------------------------
# Sensing vectors
# ---------------------------------------------------------------------------

def build_r_matrix(channels: ChannelSet, ia, i: int, l: int) -> np.ndarray:
    """All received stream directions except (i, l), pair-major stream-minor.

    Shape N^[0] x (sum_k d^[k] - 1); with a single primary stream the
    matrix has zero columns.
    """
    cols = []
    for k in range(1, channels.K + 1):
        v = ia.V[k - 1]
        for j in range(v.shape[1]):
            if k == i and j == l:
                continue
            cols.append(channels.H(0, k) @ v[:, j])
    n0 = channels.H(0, 1).shape[0]
    if not cols:
        return np.zeros((n0, 0), dtype=complex)
    return np.stack(cols, axis=1)


def sensing_vector(
    channels: ChannelSet, ia, i: int, l: int, degenerate_tol: float = 1e-10
) -> np.ndarray:
    """Unit vector orthogonal to every other stream direction, maximizing the
    inner product with the desired direction H[0i] V_i[:, l].

    Computed as the normalized residual of the desired direction after
    orthogonal projection onto the span of the other directions.  Raises
    SingularMatrixError when that span is rank deficient and
    DegenerateDirectionError when the desired direction lies inside it.
    """
    hv = channels.H(0, i) @ ia.V[i - 1][:, l]
    r = build_r_matrix(channels, ia, i, l)
    if r.shape[1] == 0:
        return hv / np.linalg.norm(hv)
    if r.shape[1] >= r.shape[0]:
        raise SingularMatrixError(
            f"sensing matrix for stream ({i},{l}) has {r.shape[1]} columns in a "
            f"{r.shape[0]}-dimensional space; need N0 > total streams - 1"
        )
    proj = orthogonal_projector(r)
    resid = hv - proj @ hv
    lam = np.linalg.norm(resid)
    if lam <= degenerate_tol * np.linalg.norm(hv):
        raise DegenerateDirectionError(
            f"desired direction of stream ({i},{l}) lies in the span of the other streams"
        )
    return resid / lam


# ---------------------------------------------------------------------------
# GLRT statistic and closed-form false-alarm probability
# ---------------------------------------------------------------------------

def stream_samples(received: np.ndarray, d: np.ndarray, convention: str = "real") -> np.ndarray:
    """Project received vectors onto a sensing vector and realify.

    "real": sqrt(2) * Re(D^H y[n]) -> T reals, each with variance noise_var
    under noise only (the sqrt(2) maps the half-variance real part back to
    the full noise variance).  "complex": both quadratures -> 2T reals.
    """
    w = np.asarray(received, dtype=complex) @ np.conj(d)
    if convention == "real":
        return np.sqrt(2.0) * np.real(w)
    if convention == "complex":
        return np.sqrt(2.0) * np.concatenate([np.real(w), np.imag(w)])
    raise ValueError(f"convention must be 'real' or 'complex', got {convention!r}")


def mle_signal_variance(y: np.ndarray, noise_var: float) -> float:
    """MLE of the unknown signal variance: Y^H Y / (2T) - noise_var.

    May be negative at low SNR; reported as-is (the detector decides on the
    test statistic, never on this estimate).
    """
    y = np.asarray(y)
    t = y.shape[0]
    energy = float(np.real(np.vdot(y, y)))
    return energy / (2.0 * t) - noise_var


def glrt_statistic(y: np.ndarray, noise_var: float) -> float:
    """Test statistic T(Y) = exp(Y^H Y / (2 T sigma_z^2)) / (Y^H Y).

    Saturates to +inf when the exponent exceeds the double range (very
    strong signals); the statistic is only ever compared against a finite
    threshold, so the decision is unaffected.
    """
    y = np.asarray(y)
    t = y.shape[0]
    energy = float(np.real(np.vdot(y, y)))
    if energy <= 0.0:
        raise ValueError("degenerate input: sample energy is zero")
    exponent = energy / (2.0 * t * noise_var)
    if exponent > 700.0:
        return math.inf
    return math.exp(exponent) / energy


def g_of_theta(theta: float, t: int, noise_var: float) -> float:
    """The statistic as a function of theta = Y^H Y / sigma_z^2.

    Strictly decreasing on (0, 2T), strictly increasing on (2T, inf), with
    minimum value e / (2 T sigma_z^2) at theta = 2T.
    """
    return math.exp(theta / (2.0 * t)) / (noise_var * theta)


def glrt_minimum(t: int, noise_var: float) -> float:
    """Smallest attainable statistic value, at theta = 2T."""
    return math.e / (2.0 * t * noise_var)


def _chi2_cdf(x: float, k: int) -> float:
    # regularized lower incomplete gamma: P(k/2, x/2)
    if x <= 0.0:
        return 0.0
    return float(gammainc(k / 2.0, x / 2.0))


def glrt_pfa(eta_prime: float, t: int, noise_var: float = 1.0) -> float:
    """Closed-form false-alarm probability of the GLRT statistic.

    With theta ~ chi^2(T) under noise only and the acceptance interval
    [g^-1_left, g^-1_right) obtained from the two Lambert W branches,

      PFA = 1 - P[-2T W_-1(a), T] + P[-2T W_0(a), T],
      a = -1 / (2 T sigma_z^2 eta'),

    where P is the chi-square CDF (regularized lower incomplete gamma).
    At or below the statistic's minimum the acceptance interval is empty
    and PFA = 1 (a RuntimeWarning flags the degenerate threshold).
    """
    if t < 1:
        raise ValueError("t must be at least 1")
    gmin = glrt_minimum(t, noise_var)
    if eta_prime <= gmin:
        warnings.warn(
            f"threshold {eta_prime} is at or below the statistic minimum {gmin}; PFA = 1",
            RuntimeWarning,
            stacklevel=2,
        )
        return 1.0
    a = -1.0 / (2.0 * t * noise_var * eta_prime)
    lo = -2.0 * t * lambert_w(0, a)
    hi = -2.0 * t * lambert_w(-1, a)
    pfa = 1.0 - _chi2_cdf(hi, t) + _chi2_cdf(lo, t)
    return min(max(pfa, 0.0), 1.0)


def glrt_threshold(target_pfa: float, t: int, noise_var: float = 1.0) -> float:
    """Invert glrt_pfa by bisection to |PFA - target| <= 1e-6."""
    if not 0.0 < target_pfa < 1.0:
        raise ValueError("target_pfa must be in (0, 1)")
    lo = glrt_minimum(t, noise_var) * (1.0 + 1e-12)
    hi = glrt_minimum(t, noise_var) * 2.0
    while glrt_pfa(hi, t, noise_var) > target_pfa:
        hi *= 2.0
        if hi > 1e300:
            raise RuntimeError("failed to bracket the GLRT threshold")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        pfa = glrt_pfa(mid, t, noise_var)
        if abs(pfa - target_pfa) <= 1e-6:
            return mid
        if pfa > target_pfa:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# Pipeline (Algorithm: fast gate, then per-stream GLRT)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GlrtDecision:
    pair: int
    stream: int
    statistic: float
    threshold: float
    inactive: bool  # statistic < threshold


@dataclass(frozen=True)
class SensingConfig:
    """Everything the fusion center needs to run both sensing stages."""

    noise_var: float
    T_fast: int
    L_fast: int
    T_fine: int
    fast_target_pfa: float = 0.1
    fine_target_pfa: float = 0.1
    fast_eta: float | None = None        # overrides the Tracy-Widom threshold
    fine_eta_prime: float | None = None  # overrides the calibrated GLRT threshold
    convention: str = "real"             # "real" | "complex" sampling convention
    dim_convention: str = "paper"        # Tracy-Widom dimension convention

    def fine_dof(self) -> int:
        return self.T_fine if self.convention == "real" else 2 * self.T_fine


@dataclass(frozen=True)
class DetectionReport:
    fast: FastDecision
    fine: tuple[GlrtDecision, ...] = field(default=())
    inactive_index_set: tuple[tuple[int, int], ...] = field(default=())

    def to_text(self) -> str:
        """Line-oriented record: one stage-1 line, then one line per stream."""
        lines = [
            f"stage1 lambda_min={self.fast.lambda_min!r} eta={self.fast.threshold!r} "
            f"hole={int(self.fast.hole_present)}"
        ]
        for dec in self.fine:
            lines.append(
                f"stream pair={dec.pair} stream={dec.stream} statistic={dec.statistic!r} "
                f"threshold={dec.threshold!r} inactive={int(dec.inactive)}"
            )
        return "\n".join(lines) + "\n"

    def csv_rows(self, trial: int) -> list[list]:
        base = [trial, repr(self.fast.lambda_min), repr(self.fast.threshold),
                int(self.fast.hole_present)]
        if not self.fine:
            return [base + ["", "", "", "", ""]]
        return [
            base
            + [dec.pair, dec.stream, repr(dec.statistic), repr(dec.threshold),
               int(dec.inactive)]
            for dec in self.fine
        ]


DETECTION_CSV_COLUMNS = [
    "trial", "stage1_lambda_min", "stage1_eta", "hole",
    "pair", "stream", "statistic", "threshold", "inactive",
]


def write_detection_csv(path, reports) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(DETECTION_CSV_COLUMNS)
        for trial, report in enumerate(reports):
            writer.writerows(report.csv_rows(trial))


def run_sensing_pipeline(
    raw: np.ndarray, channels: ChannelSet, ia, config: SensingConfig
) -> DetectionReport:
    """Two-stage sensing: eigenvalue gate, then per-stream GLRT index search.

    Stage two runs only when stage one flags a hole; it reuses the first
    T_fine raw samples, projecting them onto each stream's sensing vector.
    """
    raw = np.asarray(raw, dtype=complex)
    needed = max(config.T_fast + config.L_fast - 1, config.T_fine)
    if raw.shape[0] < needed:
        raise ValueError(f"pipeline needs at least {needed} raw samples, got {raw.shape[0]}")

    stacked = stack_samples(raw, config.T_fast, config.L_fast)
    eta = config.fast_eta
    if eta is None:
        eta = fast_threshold(
            config.fast_target_pfa, config.L_fast, config.T_fast, stacked.n0,
            config.dim_convention,
        )
    fast = detect_hole(stacked, config.noise_var, eta)
    if not fast.hole_present:
        return DetectionReport(fast=fast)

    eta_prime = config.fine_eta_prime
    if eta_prime is None:
        eta_prime = glrt_threshold(config.fine_target_pfa, config.fine_dof(), config.noise_var)

    window = raw[: config.T_fine]
    decisions = []
    inactive = []
    for i in range(1, channels.K + 1):
        for l in range(ia.V[i - 1].shape[1]):
            d = sensing_vector(channels, ia, i, l)
            y = stream_samples(window, d, config.convention)
            stat = glrt_statistic(y, config.noise_var)
            dec = GlrtDecision(
                pair=i, stream=l, statistic=stat, threshold=eta_prime,
                inactive=bool(stat < eta_prime),
            )
            decisions.append(dec)
            if dec.inactive:
                inactive.append((i, l))
    return DetectionReport(
        fast=fast, fine=tuple(decisions), inactive_index_set=tuple(inactive)
    )
