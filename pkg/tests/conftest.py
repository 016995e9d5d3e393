import numpy as np
import pytest

from spatial_holes.model import NetworkConfig, PairConfig, SecondaryConfig


def reference_config(noise_var: float = 1.0, m0: int = 3, n0: int = 3, d0: int = 1):
    """3 primary pairs of 2x2 antennas with one stream each at 10 W, plus a
    secondary link; the workhorse configuration of the experiment suite."""
    pairs = tuple(PairConfig(M=2, N=2, d=1, p=10.0) for _ in range(3))
    secondary = SecondaryConfig(M=m0, N=n0, d=d0, p=10.0)
    return NetworkConfig(pairs=pairs, secondary=secondary, noise_var=noise_var)


@pytest.fixture
def cfg3():
    return reference_config()


def crandn(rng: np.random.Generator, *shape) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def random_hermitian(rng: np.random.Generator, n: int) -> np.ndarray:
    a = crandn(rng, n, n)
    return (a + a.conj().T) / 2.0


def random_hpd(rng: np.random.Generator, n: int, floor: float = 0.1) -> np.ndarray:
    a = crandn(rng, n, n)
    return a @ a.conj().T + floor * np.eye(n)


def random_unit(rng: np.random.Generator, n: int) -> np.ndarray:
    v = crandn(rng, n)
    return v / np.linalg.norm(v)
