"""Network configuration, random channel/symbol/noise generation, activity patterns.

Complex Gaussian convention used everywhere: a variance-v circularly
symmetric complex sample has real and imaginary parts that are each
N(0, v/2).  Channel reciprocity follows the TDD convention: the reciprocal
of a forward channel H is H^H.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

__all__ = [
    "PairConfig",
    "SecondaryConfig",
    "NetworkConfig",
    "ChannelSet",
    "ActivityPattern",
    "make_rng",
    "draw_channels",
    "draw_symbols",
    "draw_noise",
    "fusion_center_samples",
    "parse_config_text",
    "load_config",
    "format_config_text",
]


@dataclass(frozen=True)
class PairConfig:
    M: int          # transmit antennas
    N: int          # receive antennas
    d: int          # data streams
    p: float        # transmit power (watts)


@dataclass(frozen=True)
class SecondaryConfig:
    M: int
    N: int
    d: int
    p: float


@dataclass(frozen=True)
class NetworkConfig:
    """Dimensions, stream counts and powers for K primary pairs plus the secondary link."""

    pairs: tuple[PairConfig, ...]
    secondary: SecondaryConfig
    noise_var: float

    @property
    def K(self) -> int:
        return len(self.pairs)

    @property
    def total_primary_streams(self) -> int:
        return sum(pair.d for pair in self.pairs)

    def validate(self) -> list[str]:
        """Return a message per violated invariant; empty list means valid."""
        violations = []
        if self.K < 1:
            violations.append("network.K must be at least 1")
        for i, pair in enumerate(self.pairs, start=1):
            if pair.M < 1 or pair.N < 1:
                violations.append(f"pair[{i}]: antenna counts must be positive")
            if pair.d < 1 or pair.d > min(pair.M, pair.N):
                violations.append(
                    f"pair[{i}]: stream count d={pair.d} violates 1 <= d <= min(M,N)="
                    f"{min(pair.M, pair.N)}"
                )
            if pair.p <= 0:
                violations.append(f"pair[{i}]: transmit power must be positive")
        sec = self.secondary
        if sec.M < 1 or sec.N < 1:
            violations.append("secondary: antenna counts must be positive")
        if sec.d < 0 or sec.d > min(sec.M, sec.N):
            violations.append(
                f"secondary: stream count d={sec.d} violates 0 <= d <= min(M,N)="
                f"{min(sec.M, sec.N)}"
            )
        if sec.p <= 0:
            violations.append("secondary: transmit power must be positive")
        if self.noise_var <= 0:
            violations.append("noise_var must be positive")
        return violations

    def replace_noise_var(self, noise_var: float) -> "NetworkConfig":
        return NetworkConfig(pairs=self.pairs, secondary=self.secondary, noise_var=noise_var)


def validate_config(cfg: NetworkConfig) -> list[str]:
    return cfg.validate()


@dataclass(frozen=True)
class ChannelSet:
    """Channel family H[rx][tx] for rx, tx in {0, ..., K}; index 0 is the secondary.

    H[k][l] has shape N^[k] x M^[l] (receiver k antennas by transmitter l
    antennas).
    """

    matrices: dict[tuple[int, int], np.ndarray]
    K: int

    def H(self, rx: int, tx: int) -> np.ndarray:
        return self.matrices[(rx, tx)]

    def check_dims(self, cfg: NetworkConfig) -> None:
        def n_of(node: int) -> int:
            return cfg.secondary.N if node == 0 else cfg.pairs[node - 1].N

        def m_of(node: int) -> int:
            return cfg.secondary.M if node == 0 else cfg.pairs[node - 1].M

        for rx in range(cfg.K + 1):
            for tx in range(cfg.K + 1):
                got = self.matrices[(rx, tx)].shape
                want = (n_of(rx), m_of(tx))
                if got != want:
                    raise ValueError(f"channel H[{rx}][{tx}] has shape {got}, expected {want}")


@dataclass(frozen=True)
class ActivityPattern:
    """Which primary streams are transmitting.  active[i-1][l] is stream l of pair i."""

    active: tuple[tuple[bool, ...], ...]

    @classmethod
    def all_active(cls, cfg: NetworkConfig) -> "ActivityPattern":
        return cls(tuple(tuple(True for _ in range(p.d)) for p in cfg.pairs))

    @classmethod
    def with_silent_pairs(cls, cfg: NetworkConfig, silent: Sequence[int]) -> "ActivityPattern":
        """Silence every stream of the 1-based pairs listed in `silent`."""
        silent_set = set(silent)
        rows = []
        for i, pair in enumerate(cfg.pairs, start=1):
            rows.append(tuple(i not in silent_set for _ in range(pair.d)))
        return cls(tuple(rows))

    @classmethod
    def with_silent_streams(
        cls, cfg: NetworkConfig, silent: Sequence[tuple[int, int]]
    ) -> "ActivityPattern":
        """Silence the listed (pair, stream) indices, both 1-based pair / 0-based stream."""
        silent_set = set(silent)
        rows = []
        for i, pair in enumerate(cfg.pairs, start=1):
            rows.append(tuple((i, l) not in silent_set for l in range(pair.d)))
        return cls(tuple(rows))

    def is_active(self, pair: int, stream: int) -> bool:
        return self.active[pair - 1][stream]

    def d_active(self, pair: int) -> int:
        return sum(self.active[pair - 1])

    @property
    def total_active(self) -> int:
        return sum(sum(row) for row in self.active)

    def active_streams(self) -> list[tuple[int, int]]:
        """All (pair, stream) indices that are transmitting, pair-major order."""
        return [
            (i, l)
            for i, row in enumerate(self.active, start=1)
            for l, on in enumerate(row)
            if on
        ]


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    """Deterministic generator for a (seed, stream...) address.

    Distinct stream tuples under the same seed give statistically
    independent draw sequences; identical tuples reproduce bit-identical
    sequences.
    """
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=tuple(stream)))


def complex_gaussian(rng: np.random.Generator, shape, variance: float = 1.0) -> np.ndarray:
    re = rng.standard_normal(shape)
    im = rng.standard_normal(shape)
    return np.sqrt(variance / 2.0) * (re + 1j * im)


def draw_channels(cfg: NetworkConfig, rng: np.random.Generator) -> ChannelSet:
    """Draw every link H[rx][tx] with i.i.d. unit-variance complex Gaussian entries."""
    violations = cfg.validate()
    if violations:
        raise ValueError("invalid config: " + "; ".join(violations))

    def n_of(node: int) -> int:
        return cfg.secondary.N if node == 0 else cfg.pairs[node - 1].N

    def m_of(node: int) -> int:
        return cfg.secondary.M if node == 0 else cfg.pairs[node - 1].M

    matrices = {}
    for rx in range(cfg.K + 1):
        for tx in range(cfg.K + 1):
            matrices[(rx, tx)] = complex_gaussian(rng, (n_of(rx), m_of(tx)))
    return ChannelSet(matrices=matrices, K=cfg.K)


def draw_symbols(d: int, n: int, rng: np.random.Generator) -> np.ndarray:
    """n symbol vectors of dimension d, unit variance per stream.

    The uniform per-stream power scaling p/d is applied by the caller.
    """
    if d < 1 or n < 1:
        raise ValueError("draw_symbols needs d >= 1 and n >= 1")
    return complex_gaussian(rng, (n, d))


def draw_noise(dim: int, noise_var: float, n: int, rng: np.random.Generator) -> np.ndarray:
    """n AWGN vectors of dimension dim with per-entry variance noise_var."""
    if noise_var <= 0:
        raise ValueError("noise_var must be positive")
    if dim < 1 or n < 1:
        raise ValueError("draw_noise needs dim >= 1 and n >= 1")
    return complex_gaussian(rng, (n, dim), variance=noise_var)


def fusion_center_samples(
    channels: ChannelSet,
    precoders: Sequence[np.ndarray],
    cfg: NetworkConfig,
    activity: ActivityPattern,
    count: int,
    rng: np.random.Generator,
    include_noise: bool = True,
) -> np.ndarray:
    """Simulate `count` received vectors at the secondary receiver (fusion center).

    Each sample is sum over active primary streams of
    sqrt(p/d) H[0][i] V_i[:, l] x_{i,l}[n], plus AWGN when requested.
    `precoders[i-1]` is the precoder of primary pair i.  Returns a
    (count x N^[0]) array.
    """
    n0 = cfg.secondary.N
    out = np.zeros((count, n0), dtype=complex)
    for i, l in activity.active_streams():
        pair = cfg.pairs[i - 1]
        direction = channels.H(0, i) @ precoders[i - 1][:, l]
        symbols = draw_symbols(1, count, rng)[:, 0]
        out += np.sqrt(pair.p / pair.d) * symbols[:, None] * direction[None, :]
    if include_noise:
        out += draw_noise(n0, cfg.noise_var, count, rng)
    return out


# ---------------------------------------------------------------------------
# Config file format: flat "key = value" lines, one entry per line.
#
#   network.K = 3
#   network.pair[1].M = 2        (likewise .N, .d, .p; pairs 1..K)
#   secondary.M = 3              (likewise .N, .d, .p)
#   noise_var = 1.0
#   seed = 7
#
# '#' starts a comment.  Unknown keys are rejected.
# ---------------------------------------------------------------------------

_PAIR_FIELDS = ("M", "N", "d", "p")
_SECONDARY_KEYS = {f"secondary.{f}" for f in _PAIR_FIELDS}


def parse_config_text(text: str) -> tuple[NetworkConfig, int | None]:
    """Parse the documented config format; returns (config, seed or None).

    Raises ValueError on syntax errors, unknown keys, or missing entries.
    """
    entries: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key in entries:
            raise ValueError(f"line {lineno}: duplicate key {key!r}")
        entries[key] = value

    if "network.K" not in entries:
        raise ValueError("missing required key 'network.K'")
    try:
        K = int(entries.pop("network.K"))
    except ValueError as exc:
        raise ValueError(f"network.K must be an integer: {exc}") from exc
    if K < 1:
        raise ValueError("network.K must be at least 1")

    known = set(_SECONDARY_KEYS) | {"noise_var", "seed"}
    for i in range(1, K + 1):
        known |= {f"network.pair[{i}].{f}" for f in _PAIR_FIELDS}
    unknown = sorted(set(entries) - known)
    if unknown:
        raise ValueError(f"unknown config keys: {', '.join(unknown)}")

    def grab(key: str, kind):
        if key not in entries:
            raise ValueError(f"missing required key {key!r}")
        try:
            return kind(entries[key])
        except ValueError as exc:
            raise ValueError(f"bad value for {key!r}: {exc}") from exc

    pairs = tuple(
        PairConfig(
            M=grab(f"network.pair[{i}].M", int),
            N=grab(f"network.pair[{i}].N", int),
            d=grab(f"network.pair[{i}].d", int),
            p=grab(f"network.pair[{i}].p", float),
        )
        for i in range(1, K + 1)
    )
    secondary = SecondaryConfig(
        M=grab("secondary.M", int),
        N=grab("secondary.N", int),
        d=grab("secondary.d", int),
        p=grab("secondary.p", float),
    )
    noise_var = grab("noise_var", float)
    seed = int(entries["seed"]) if "seed" in entries else None
    return NetworkConfig(pairs=pairs, secondary=secondary, noise_var=noise_var), seed


def load_config(path) -> tuple[NetworkConfig, int | None]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config_text(fh.read())


def format_config_text(cfg: NetworkConfig, seed: int | None = None) -> str:
    lines = [f"network.K = {cfg.K}"]
    for i, pair in enumerate(cfg.pairs, start=1):
        lines += [
            f"network.pair[{i}].M = {pair.M}",
            f"network.pair[{i}].N = {pair.N}",
            f"network.pair[{i}].d = {pair.d}",
            f"network.pair[{i}].p = {pair.p!r}",
        ]
    sec = cfg.secondary
    lines += [
        f"secondary.M = {sec.M}",
        f"secondary.N = {sec.N}",
        f"secondary.d = {sec.d}",
        f"secondary.p = {sec.p!r}",
        f"noise_var = {cfg.noise_var!r}",
    ]
    if seed is not None:
        lines.append(f"seed = {seed}")
    return "\n".join(lines) + "\n"
