"""Dense complex linear algebra primitives and Haar sampling.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``. The
routines here add the small amount of policy the rest of the package relies
on: Hermiticity enforcement, a deterministic eigenvector phase convention, and
seeded Haar-random unitaries.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from sepspec.exceptions import DimensionError, ValidationError

HERMITIAN_TOL = 1e-10
UNITARY_TOL = 1e-10
# relative threshold for "first nonzero component" in the phase convention
_PHASE_EPS = 1e-12

RngLike = np.random.Generator | int | None


class HermitianEigenSystem(NamedTuple):
    """Eigenvalues in ascending order and matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


class SingularSystem(NamedTuple):
    """``M = left_vectors @ diag(singular_values) @ right_vectors.conj().T``."""

    singular_values: np.ndarray
    left_vectors: np.ndarray
    right_vectors: np.ndarray


def as_generator(rng: RngLike) -> np.random.Generator:
    """Coerce a seed or generator into a ``numpy.random.Generator``."""
    return np.random.default_rng(rng)


def _require_square(mat: np.ndarray) -> None:
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {mat.shape}")


def as_matrix(mat) -> np.ndarray:
    """Return ``mat`` as a finite 2-D complex array."""
    arr = np.asarray(mat, dtype=complex)
    if arr.ndim != 2:
        raise DimensionError(f"expected a 2-D array, got {arr.ndim} dimensions")
    if not np.all(np.isfinite(arr)):
        raise ValidationError("matrix has non-finite entries")
    return arr


def hermitian_part(mat, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Symmetrize ``mat`` to ``(M + M^dagger)/2`` after checking it is nearly Hermitian.

    :param mat: square matrix.
    :param tol: largest entrywise deviation from Hermiticity that is treated as noise.
    :raises ValidationError: if ``max |M - M^dagger| > tol``.
    """
    arr = as_matrix(mat)
    _require_square(arr)
    dev = np.max(np.abs(arr - arr.conj().T)) if arr.size else 0.0
    if dev > tol:
        raise ValidationError(f"matrix is not Hermitian (max deviation {dev:.3e} > {tol:.1e})")
    return (arr + arr.conj().T) / 2


def _phase_factors(vectors: np.ndarray) -> np.ndarray:
    """Unit-modulus factors making each column's first non-negligible entry real positive."""
    phases = np.ones(vectors.shape[1], dtype=complex)
    for k in range(vectors.shape[1]):
        col = vectors[:, k]
        scale = np.max(np.abs(col)) if col.size else 0.0
        if scale == 0.0:
            continue
        idx = int(np.argmax(np.abs(col) > _PHASE_EPS * scale))
        phases[k] = abs(col[idx]) / col[idx]
    return phases


def fix_phases(vectors: np.ndarray) -> np.ndarray:
    """Rotate each column so its first non-negligible entry is real and positive."""
    vecs = np.asarray(vectors, dtype=complex)
    return vecs * _phase_factors(vecs)


def hermitian_eigendecompose(mat, tol: float = HERMITIAN_TOL) -> HermitianEigenSystem:
    """Eigendecomposition of a Hermitian matrix with a reproducible gauge.

    Eigenvalues come back ascending. Each eigenvector is multiplied by a phase
    so that its first entry of non-negligible modulus is real and positive;
    within a degenerate eigenspace the basis is whatever LAPACK returns for
    the symmetrized input, which is deterministic for a given input.
    """
    herm = hermitian_part(mat, tol)
    vals, vecs = np.linalg.eigh(herm)
    return HermitianEigenSystem(vals, fix_phases(vecs))


def singular_value_decompose(mat) -> SingularSystem:
    """Singular value decomposition with descending singular values.

    Left vectors follow the same phase convention as eigenvectors; the right
    vectors absorb the compensating phase so the factorization is unchanged.
    """
    arr = as_matrix(mat)
    u, s, vh = np.linalg.svd(arr)
    v = vh.conj().T
    k = min(u.shape[1], v.shape[1])
    phases = _phase_factors(u)
    u = u * phases
    v[:, :k] = v[:, :k] * phases[:k]
    return SingularSystem(s, u, v)


def operator_norm(mat) -> float:
    """Largest singular value of ``mat``."""
    arr = as_matrix(mat)
    if arr.size == 0:
        return 0.0
    return float(np.linalg.norm(arr, 2))


def min_eigenvalue(mat, tol: float = HERMITIAN_TOL) -> float:
    return float(np.linalg.eigvalsh(hermitian_part(mat, tol))[0])


def is_positive_semidefinite(mat, tol: float = 1e-10) -> bool:
    """Return ``True`` iff the smallest eigenvalue of the Hermitian ``mat`` is at least ``-tol``."""
    return min_eigenvalue(mat) >= -tol


def is_unitary(mat, tol: float = UNITARY_TOL) -> bool:
    arr = as_matrix(mat)
    if arr.shape[0] != arr.shape[1]:
        return False
    return bool(np.max(np.abs(arr @ arr.conj().T - np.eye(arr.shape[0]))) <= tol)


def require_unitary(mat, tol: float = UNITARY_TOL, name: str = "matrix") -> np.ndarray:
    arr = as_matrix(mat)
    _require_square(arr)
    if not is_unitary(arr, tol):
        raise ValidationError(f"{name} is not unitary within {tol:.1e}")
    return arr


def random_haar_unitary(dim: int, rng: RngLike = None) -> np.ndarray:
    """Sample a Haar-distributed ``dim x dim`` unitary.

    Uses the QR decomposition of a complex Ginibre matrix, with the columns of
    ``Q`` rescaled by the phases of ``diag(R)`` so that the result is exactly
    Haar distributed (Mezzadri's correction).

    :param dim: matrix size, at least 1.
    :param rng: seed or ``numpy.random.Generator``.
    """
    if dim < 1:
        raise DimensionError("dim must be at least 1")
    gen = as_generator(rng)
    z = (gen.standard_normal((dim, dim)) + 1j * gen.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def kron(x, y) -> np.ndarray:
    """Kronecker product ``x (x) y`` with the first factor as the major (block) index."""
    return np.kron(as_matrix(x), as_matrix(y))


def orthonormal_completion(vectors: np.ndarray) -> np.ndarray:
    """Extend orthonormal columns to a full unitary.

    The added columns span the orthogonal complement and are obtained from
    the SVD of the projector onto it, so the result is deterministic.
    """
    vecs = np.asarray(vectors, dtype=complex)
    dim, k = vecs.shape
    if k == dim:
        return vecs.copy()
    proj = np.eye(dim) - vecs @ vecs.conj().T
    u, _, _ = np.linalg.svd(proj)
    return np.hstack([vecs, fix_phases(u[:, : dim - k])])
