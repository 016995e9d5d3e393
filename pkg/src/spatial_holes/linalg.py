"""Dense complex linear-algebra kernels shared by the whole package.

Everything here is specified by contract (reconstruction residuals,
orthonormality, idempotence) so the numpy/LAPACK backend can be swapped
without touching callers.  Matrices are plain complex ndarrays; all
tolerances are relative and configurable per call.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

HERMITIAN_TOL = 1e-9
RANK_TOL = 1e-10
PD_TOL = 1e-10
NULLSPACE_TOL = 1e-8


class LinalgContractError(ValueError):
    """Input violates a kernel precondition (non-square, non-Hermitian, ...)."""


class SingularMatrixError(ValueError):
    """A matrix required to be invertible / full rank is numerically singular."""


@dataclass(frozen=True)
class EigDecomposition:
    """Eigenvalues sorted ascending with matching orthonormal eigenvectors."""

    values: np.ndarray   # real, ascending
    vectors: np.ndarray  # column i pairs with values[i]


def _as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise LinalgContractError(f"expected a 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m.view(float))):
        raise LinalgContractError("matrix contains non-finite entries")
    return m


def hermitian_eig(a, herm_tol: float = HERMITIAN_TOL) -> EigDecomposition:
    """Eigendecomposition of a Hermitian matrix.

    Raises LinalgContractError if `a` is not square or deviates from
    Hermitian symmetry by more than `herm_tol` relative to its norm.
    """
    m = _as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise LinalgContractError(f"hermitian_eig needs a square matrix, got {m.shape}")
    scale = max(1.0, np.linalg.norm(m))
    if np.linalg.norm(m - m.conj().T) > herm_tol * scale:
        raise LinalgContractError("matrix is not Hermitian within tolerance")
    values, vectors = np.linalg.eigh(m)
    return EigDecomposition(values=values, vectors=vectors)


def null_space_basis(a, tol: float = NULLSPACE_TOL) -> np.ndarray:
    """Orthonormal basis of the (numerical) null space of `a`.

    Computed from the eigenvectors of A^H A whose eigenvalue is at most
    (tol * sigma_max)^2, i.e. the right-singular directions with singular
    value <= tol relative to the largest one.  A matrix with zero rows has
    a full null space.  Returns an (n_cols x nullity) matrix, possibly with
    zero columns.
    """
    if tol <= 0:
        raise LinalgContractError("null-space tolerance must be positive")
    m = _as_matrix(a)
    n = m.shape[1]
    if m.shape[0] == 0:
        return np.eye(n, dtype=complex)
    gram = m.conj().T @ m
    eig = hermitian_eig((gram + gram.conj().T) / 2.0)
    sigma_max_sq = max(eig.values[-1], 0.0)
    # exact zeros of the Gram matrix carry O(eps * lambda_max) round-off,
    # which can exceed tol^2 for tight tolerances; the eps floor keeps them
    # classified as null directions
    rel = max(tol ** 2, 64.0 * np.finfo(float).eps)
    cutoff = rel * max(sigma_max_sq, 1e-300)
    null_count = int(np.sum(eig.values <= cutoff))
    return eig.vectors[:, :null_count]


def orthogonal_projector(r, rank_tol: float = RANK_TOL) -> np.ndarray:
    """Orthogonal projector R (R^H R)^{-1} R^H onto the column space of `r`.

    `r` must have full column rank; otherwise SingularMatrixError names the
    offending Gram matrix.
    """
    m = _as_matrix(r)
    if m.shape[1] == 0:
        return np.zeros((m.shape[0], m.shape[0]), dtype=complex)
    gram = m.conj().T @ m
    w = np.linalg.eigvalsh((gram + gram.conj().T) / 2.0)
    if w[0] <= rank_tol * max(w[-1], 0.0) or w[-1] <= 0.0:
        raise SingularMatrixError(
            f"R^H R is rank deficient (min/max eigenvalue {w[0]:.3e}/{w[-1]:.3e}); "
            "R does not have full column rank"
        )
    proj = m @ np.linalg.solve(gram, m.conj().T)
    return (proj + proj.conj().T) / 2.0


def solve_hermitian_pd(b, y, pd_tol: float = PD_TOL) -> np.ndarray:
    """Solve B x = y for Hermitian positive-definite B via Cholesky."""
    m = _as_matrix(b)
    if m.shape[0] != m.shape[1]:
        raise LinalgContractError(f"solve_hermitian_pd needs a square matrix, got {m.shape}")
    scale = max(1.0, np.linalg.norm(m))
    if np.linalg.norm(m - m.conj().T) > HERMITIAN_TOL * scale:
        raise LinalgContractError("matrix is not Hermitian within tolerance")
    w = np.linalg.eigvalsh((m + m.conj().T) / 2.0)
    if w[0] <= pd_tol * max(w[-1], 0.0):
        raise SingularMatrixError(
            f"matrix is not positive definite (min eigenvalue {w[0]:.3e})"
        )
    try:
        chol = np.linalg.cholesky(m)
    except np.linalg.LinAlgError as exc:
        raise SingularMatrixError(f"Cholesky factorization failed: {exc}") from exc
    rhs = np.asarray(y, dtype=complex)
    z = np.linalg.solve(chol, rhs)
    return np.linalg.solve(chol.conj().T, z)


def sample_covariance(samples, noise_var: float) -> np.ndarray:
    """Noise-normalized sample covariance (1 / (L sigma_z^2)) sum_n y_n y_n^H.

    `samples` is a sequence (or L x dim array) of complex vectors.  The
    result is exactly Hermitian PSD up to round-off symmetrization.
    """
    if noise_var <= 0:
        raise ValueError("noise_var must be positive")
    y = np.asarray(samples, dtype=complex)
    if y.ndim == 1:
        y = y[None, :]
    if y.shape[0] == 0:
        raise ValueError("sample_covariance needs at least one sample")
    cov = (y.T @ y.conj()) / (y.shape[0] * noise_var)
    return (cov + cov.conj().T) / 2.0
