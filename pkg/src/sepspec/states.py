"""Bipartite density matrices on C^m (x) C^n, block form, partial transpose and spectra.

Composite basis index is ``a * n + b`` with the first (qubit) factor major, so
for ``m = 2`` the matrix splits into the ``n x n`` blocks

    rho = [[A, B],
           [B^dagger, C]].
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from sepspec.exceptions import DimensionError, NotAStateError, ValidationError
from sepspec.linalg import (
    HERMITIAN_TOL,
    RngLike,
    as_matrix,
    random_haar_unitary,
    require_unitary,
)

STATE_TOL = 1e-10


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class BipartiteDensityMatrix:
    """A validated density matrix on ``C^dim_a (x) C^dim_b``.

    Construction symmetrizes the matrix and checks trace one and positivity
    up to ``STATE_TOL``; violations raise :class:`NotAStateError`.
    """

    matrix: np.ndarray
    dim_a: int = 2
    dim_b: int = field(default=0)

    def __post_init__(self):
        mat = as_matrix(self.matrix)
        dim_b = self.dim_b or mat.shape[0] // self.dim_a
        if self.dim_a < 1 or dim_b < 1:
            raise DimensionError("local dimensions must be positive")
        size = self.dim_a * dim_b
        if mat.shape != (size, size):
            raise DimensionError(f"matrix shape {mat.shape} does not match dims ({self.dim_a}, {dim_b})")
        dev = float(np.max(np.abs(mat - mat.conj().T)))
        if dev > HERMITIAN_TOL:
            raise NotAStateError(f"not Hermitian: max |M - M^dagger| = {dev:.3e}")
        mat = (mat + mat.conj().T) / 2
        tr = float(np.trace(mat).real)
        if abs(tr - 1.0) > STATE_TOL:
            raise NotAStateError(f"trace is {tr!r}, not 1")
        lam_min = float(np.linalg.eigvalsh(mat)[0])
        if lam_min < -STATE_TOL:
            raise NotAStateError(f"not positive semidefinite: minimal eigenvalue {lam_min:.3e}")
        object.__setattr__(self, "matrix", _readonly(mat))
        object.__setattr__(self, "dim_b", dim_b)

    @property
    def dims(self) -> tuple[int, int]:
        return self.dim_a, self.dim_b

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape


@dataclass(frozen=True)
class BlockForm:
    """The ``n x n`` blocks ``A``, ``B``, ``C`` of a qubit-qudit operator."""

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray

    @property
    def n(self) -> int:
        return self.A.shape[0]

    def assemble(self) -> np.ndarray:
        return np.block([[self.A, self.B], [self.B.conj().T, self.C]])


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues sorted descending, summing to one, negatives within tolerance clamped to zero."""

    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float).ravel()
        if vals.size == 0:
            raise DimensionError("spectrum is empty")
        if not np.all(np.isfinite(vals)):
            raise NotAStateError("spectrum has non-finite entries")
        if vals.min() < -STATE_TOL:
            raise NotAStateError(f"negative eigenvalue {vals.min():.3e}")
        total = float(vals.sum())
        if abs(total - 1.0) > STATE_TOL:
            raise NotAStateError(f"eigenvalues sum to {total!r}, not 1")
        vals = np.sort(np.clip(vals, 0.0, None))[::-1].copy()
        object.__setattr__(self, "values", _readonly(vals))

    def __len__(self) -> int:
        return self.values.size

    def __getitem__(self, k):
        return self.values[k]

    @classmethod
    def uniform(cls, size: int) -> "Spectrum":
        return cls(np.full(size, 1.0 / size))


def density_matrix(mat, dims: tuple[int, int] | None = None) -> BipartiteDensityMatrix:
    """Wrap a raw matrix, defaulting to a qubit on the first factor."""
    if isinstance(mat, BipartiteDensityMatrix):
        return mat
    arr = as_matrix(mat)
    if dims is None:
        if arr.shape[0] % 2:
            raise DimensionError("odd matrix size: pass dims explicitly")
        dims = (2, arr.shape[0] // 2)
    return BipartiteDensityMatrix(arr, dims[0], dims[1])


def _require_qubit(rho: BipartiteDensityMatrix) -> None:
    if rho.dim_a != 2:
        raise DimensionError(f"block form needs a qubit first factor, got dim_a = {rho.dim_a}")


def to_blocks(rho: BipartiteDensityMatrix) -> BlockForm:
    """Split a ``2 (x) n`` state into ``A``, ``B``, ``C`` (copies, no arithmetic)."""
    _require_qubit(rho)
    n = rho.dim_b
    mat = rho.matrix
    return BlockForm(mat[:n, :n].copy(), mat[:n, n:].copy(), mat[n:, n:].copy())


def from_blocks(blocks: BlockForm) -> BipartiteDensityMatrix:
    """Reassemble ``[[A, B], [B^dagger, C]]`` and validate it as a state."""
    return BipartiteDensityMatrix(blocks.assemble(), 2, blocks.n)


def partial_transpose_matrix(mat: np.ndarray, dim_a: int, dim_b: int) -> np.ndarray:
    """Transpose the second tensor factor of an operator on ``C^dim_a (x) C^dim_b``.

    Each ``dim_b x dim_b`` block is transposed in place (no conjugation).
    """
    arr = np.asarray(mat)
    if arr.shape != (dim_a * dim_b, dim_a * dim_b):
        raise DimensionError(f"shape {arr.shape} does not match dims ({dim_a}, {dim_b})")
    t = arr.reshape(dim_a, dim_b, dim_a, dim_b).transpose(0, 3, 2, 1)
    return t.reshape(dim_a * dim_b, dim_a * dim_b)


def partial_transpose(rho: BipartiteDensityMatrix) -> np.ndarray:
    """``(id (x) T)(rho)``, transposing the second (qudit) factor."""
    return partial_transpose_matrix(rho.matrix, rho.dim_a, rho.dim_b)


def min_pt_eigenvalue(rho: BipartiteDensityMatrix) -> float:
    pt = partial_transpose(rho)
    return float(np.linalg.eigvalsh((pt + pt.conj().T) / 2)[0])


def is_ppt(rho: BipartiteDensityMatrix, tol: float = 1e-10) -> bool:
    """Return ``True`` iff the partial transpose of ``rho`` has no eigenvalue below ``-tol``."""
    return min_pt_eigenvalue(rho) >= -tol


def spectrum_of(rho: BipartiteDensityMatrix) -> Spectrum:
    return Spectrum(np.linalg.eigvalsh(rho.matrix))


def random_state_with_spectrum(
    spec: Spectrum, dims: tuple[int, int], rng: RngLike = None
) -> BipartiteDensityMatrix:
    """Sample ``Q diag(spec) Q^dagger`` with Haar-random ``Q``.

    :param spec: target eigenvalues; length must be ``dims[0] * dims[1]``.
    :param dims: local dimensions ``(m, n)``.
    :param rng: seed or generator.
    """
    if not isinstance(spec, Spectrum):
        spec = Spectrum(spec)
    dim_a, dim_b = dims
    if len(spec) != dim_a * dim_b:
        raise DimensionError(f"spectrum has {len(spec)} entries, dims {dims} need {dim_a * dim_b}")
    q = random_haar_unitary(dim_a * dim_b, rng)
    if np.ptp(spec.values) == 0.0:
        # the orbit of a flat spectrum is the single point I/N
        return maximally_mixed(dim_a, dim_b)
    mat = (q * spec.values) @ q.conj().T
    return BipartiteDensityMatrix(mat, dim_a, dim_b)


def conjugate_local(rho: BipartiteDensityMatrix, unitary) -> BipartiteDensityMatrix:
    """Return ``(U (x) I)^dagger rho (U (x) I)`` for a unitary ``U`` on the first factor."""
    u = require_unitary(unitary, name="local unitary")
    if u.shape[0] != rho.dim_a:
        raise DimensionError(f"local unitary is {u.shape[0]}x{u.shape[0]}, first factor has dim {rho.dim_a}")
    full = np.kron(u, np.eye(rho.dim_b))
    return BipartiteDensityMatrix(full.conj().T @ rho.matrix @ full, rho.dim_a, rho.dim_b)


def conjugate_global(rho: BipartiteDensityMatrix, unitary) -> BipartiteDensityMatrix:
    """Return ``U^dagger rho U`` for a unitary on the whole space."""
    u = require_unitary(unitary, name="global unitary")
    if u.shape != rho.shape:
        raise DimensionError(f"unitary shape {u.shape} does not match state shape {rho.shape}")
    return BipartiteDensityMatrix(u.conj().T @ rho.matrix @ u, rho.dim_a, rho.dim_b)


def product_state(qubit, qudit) -> BipartiteDensityMatrix:
    """Pure product state ``|v><v| (x) |w><w|`` from (not necessarily normalized) vectors."""
    v = np.asarray(qubit, dtype=complex)
    w = np.asarray(qudit, dtype=complex)
    if np.linalg.norm(v) == 0 or np.linalg.norm(w) == 0:
        raise ValidationError("zero vector")
    psi = np.kron(v / np.linalg.norm(v), w / np.linalg.norm(w))
    return BipartiteDensityMatrix(np.outer(psi, psi.conj()), v.size, w.size)


def maximally_mixed(dim_a: int, dim_b: int) -> BipartiteDensityMatrix:
    size = dim_a * dim_b
    return BipartiteDensityMatrix(np.eye(size) / size, dim_a, dim_b)
