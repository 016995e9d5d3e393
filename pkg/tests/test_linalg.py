import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spatial_holes.linalg import (
    EigDecomposition,
    LinalgContractError,
    SingularMatrixError,
    hermitian_eig,
    null_space_basis,
    orthogonal_projector,
    sample_covariance,
    solve_hermitian_pd,
)

from conftest import crandn, random_hermitian, random_hpd


class TestHermitianEig:
    def test_identity(self):
        dec = hermitian_eig(np.eye(3))
        assert np.allclose(dec.values, [1.0, 1.0, 1.0])
        assert np.allclose(dec.vectors.conj().T @ dec.vectors, np.eye(3), atol=1e-12)

    def test_diagonal_sorted_ascending(self):
        dec = hermitian_eig(np.diag([3.0, 1.0, 2.0]))
        assert np.allclose(dec.values, [1.0, 2.0, 3.0])
        # permuted standard basis columns
        assert np.allclose(np.abs(dec.vectors), np.eye(3)[:, [1, 2, 0]], atol=1e-12)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(2, 8), st.integers(0, 10_000))
    def test_reconstruction_and_trace(self, n, seed):
        rng = np.random.default_rng(seed)
        a = random_hermitian(rng, n)
        dec = hermitian_eig(a)
        recon = dec.vectors @ np.diag(dec.values) @ dec.vectors.conj().T
        assert np.linalg.norm(recon - a) <= 1e-10 * max(1.0, np.linalg.norm(a))
        assert abs(np.sum(dec.values) - np.real(np.trace(a))) <= 1e-9 * max(
            1.0, abs(np.trace(a))
        )
        gram = dec.vectors.conj().T @ dec.vectors
        assert np.linalg.norm(gram - np.eye(n)) <= 1e-10
        assert np.all(np.diff(dec.values) >= -1e-12)

    def test_rejects_non_square(self):
        with pytest.raises(LinalgContractError):
            hermitian_eig(np.ones((2, 3)))

    def test_rejects_non_hermitian(self):
        with pytest.raises(LinalgContractError):
            hermitian_eig(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_returns_dataclass(self):
        assert isinstance(hermitian_eig(np.eye(2)), EigDecomposition)


class TestNullSpace:
    def test_canonical(self):
        a = np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
        basis = null_space_basis(a)
        assert basis.shape == (3, 1)
        assert abs(abs(basis[2, 0]) - 1.0) < 1e-12

    def test_full_rank_square(self):
        rng = np.random.default_rng(7)
        a = crandn(rng, 4, 4) + 2 * np.eye(4)
        assert null_space_basis(a).shape[1] == 0

    def test_wide_random(self):
        rng = np.random.default_rng(11)
        a = crandn(rng, 2, 3)
        basis = null_space_basis(a)
        assert basis.shape == (3, 1)
        assert np.linalg.norm(a @ basis) <= 1e-10 * np.linalg.norm(a)

    def test_zero_rows_full_basis(self):
        basis = null_space_basis(np.zeros((0, 4)))
        assert basis.shape == (4, 4)
        assert np.allclose(basis.conj().T @ basis, np.eye(4))

    @settings(max_examples=30, deadline=None)
    @given(st.integers(1, 5), st.integers(1, 6), st.integers(0, 10_000))
    def test_rank_nullity(self, rows, cols, seed):
        rng = np.random.default_rng(seed)
        a = crandn(rng, rows, cols)
        basis = null_space_basis(a)
        rank = np.linalg.matrix_rank(a, tol=1e-8 * max(1.0, np.linalg.norm(a)))
        assert rank + basis.shape[1] == cols
        if basis.shape[1]:
            assert np.linalg.norm(a @ basis) <= 1e-8 * max(1.0, np.linalg.norm(a))
            gram = basis.conj().T @ basis
            assert np.linalg.norm(gram - np.eye(basis.shape[1])) <= 1e-10

    def test_rejects_bad_tol(self):
        with pytest.raises(LinalgContractError):
            null_space_basis(np.eye(2), tol=0.0)


class TestProjector:
    def test_unit_column(self):
        e1 = np.zeros((4, 1), dtype=complex)
        e1[0, 0] = 1.0
        proj = orthogonal_projector(e1)
        assert np.allclose(proj, np.diag([1.0, 0, 0, 0]), atol=1e-12)

    def test_identity(self):
        assert np.allclose(orthogonal_projector(np.eye(3)), np.eye(3), atol=1e-12)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(2, 6), st.integers(1, 3), st.integers(0, 10_000))
    def test_idempotent_and_fixes_range(self, n, k, seed):
        rng = np.random.default_rng(seed)
        k = min(k, n - 1)
        r = crandn(rng, n, k)
        proj = orthogonal_projector(r)
        assert np.linalg.norm(proj @ proj - proj) <= 1e-9
        assert np.linalg.norm(proj - proj.conj().T) <= 1e-12
        assert np.linalg.norm(proj @ r - r) <= 1e-9 * max(1.0, np.linalg.norm(r))
        # complement annihilates the range and the split is exact
        comp = np.eye(n) - proj
        assert np.linalg.norm(comp @ r) <= 1e-9 * max(1.0, np.linalg.norm(r))
        assert np.allclose(proj + comp, np.eye(n))

    def test_rank_deficient_raises(self):
        r = np.ones((3, 2), dtype=complex)  # identical columns
        with pytest.raises(SingularMatrixError, match="full column rank"):
            orthogonal_projector(r)


class TestSolveHPD:
    def test_identity(self):
        y = np.array([1.0, 2.0, 3.0], dtype=complex)
        assert np.allclose(solve_hermitian_pd(np.eye(3), y), y)

    def test_scaled_identity(self):
        y = np.array([2.0, -4.0], dtype=complex)
        assert np.allclose(solve_hermitian_pd(2 * np.eye(2), y), y / 2)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(2, 6), st.integers(0, 10_000))
    def test_residual(self, n, seed):
        rng = np.random.default_rng(seed)
        b = random_hpd(rng, n)
        y = crandn(rng, n)
        x = solve_hermitian_pd(b, y)
        assert np.linalg.norm(b @ x - y) <= 1e-9 * np.linalg.norm(y)

    def test_non_pd_raises(self):
        with pytest.raises(SingularMatrixError):
            solve_hermitian_pd(np.diag([1.0, -1.0]), np.ones(2))

    def test_non_hermitian_raises(self):
        with pytest.raises(LinalgContractError):
            solve_hermitian_pd(np.array([[1.0, 1.0], [0.0, 1.0]]), np.ones(2))


class TestSampleCovariance:
    def test_single_sample(self):
        e1 = np.zeros(3, dtype=complex)
        e1[0] = 1.0
        cov = sample_covariance([e1], noise_var=1.0)
        want = np.zeros((3, 3))
        want[0, 0] = 1.0
        assert np.allclose(cov, want)

    def test_two_point_average(self):
        e1 = np.eye(2)[0].astype(complex)
        e2 = np.eye(2)[1].astype(complex)
        cov = sample_covariance([e1, e2], noise_var=1.0)
        assert np.allclose(cov, np.diag([0.5, 0.5]))

    def test_law_of_large_numbers(self):
        rng = np.random.default_rng(3)
        samples = crandn(rng, 10_000, 3)
        cov = sample_covariance(samples, noise_var=1.0)
        assert np.max(np.abs(cov - np.eye(3))) <= 0.05

    def test_scaling_linearity(self):
        rng = np.random.default_rng(5)
        samples = crandn(rng, 50, 4)
        base = sample_covariance(samples, noise_var=1.0)
        scaled = sample_covariance(3.0 * samples, noise_var=2.0)
        assert np.allclose(scaled, base * 9.0 / 2.0)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            sample_covariance(np.zeros((0, 3)), noise_var=1.0)

    def test_psd_and_hermitian(self):
        rng = np.random.default_rng(9)
        cov = sample_covariance(crandn(rng, 20, 4), noise_var=0.5)
        assert np.linalg.norm(cov - cov.conj().T) == 0.0
        assert np.linalg.eigvalsh(cov)[0] >= -1e-12
