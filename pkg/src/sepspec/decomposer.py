"""Explicit separable decompositions of qubit-qudit states that are separable from spectrum.

Pipeline for ``rho = [[A, B], [B^dagger, C]]``:

1. Rotate the qubit with ``U(t) = [[cos(pi t/2), -sin(pi t/2)], [sin(pi t/2), cos(pi t/2)]]``
   and search ``t in [0, 1]`` for a frame where the block gap
   ``h(t) = ||B_t||^2 - lambda_min(A_t) lambda_min(C_t)`` is non-positive.
   Such a ``t`` exists whenever the spectrum passes the absolute separability
   condition.
2. In that frame split ``A = a I + A'``, ``C = c I + C'``. The block-diagonal
   remainder ``diag(A', C')`` is a sum of products directly; the core
   ``[[a I, B], [B^dagger, c I]]`` equals ``(D (x) I)[[I, K], [K^dagger, I]](D (x) I)``
   with ``D = diag(sqrt a, sqrt c)`` and contraction ``K = B / sqrt(ac)``.
3. ``K`` is the average of two unitaries, and each ``[[I, U], [U^dagger, I]]`` is a
   sum of ``n`` products read off the eigenvectors of ``U``.
4. Undo ``D`` and the rotation on the qubit factors.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import schur
from scipy.optimize import minimize_scalar

from sepspec.criteria import abs_sep_condition
from sepspec.exceptions import (
    AlignmentInfeasibleError,
    ContractionViolationError,
    DimensionError,
    BlockInequalityError,
    NotAdmissibleError,
    SepSpecError,
    SpectralConditionError,
)
from sepspec.linalg import (
    hermitian_eigendecompose,
    orthonormal_completion,
    require_unitary,
    singular_value_decompose,
)
from sepspec.states import (
    BipartiteDensityMatrix,
    BlockForm,
    conjugate_local,
    spectrum_of,
    to_blocks,
)

ADMISSIBLE_TOL = 1e-10
BLOCK_TOL = 1e-10
CONTRACTION_TOL = 1e-10
RECONSTRUCTION_TOL = 1e-8
DEGENERACY_TOL = 1e-9
DEFAULT_GRID = 1024
DEFAULT_REFINE_TOL = 1e-12
# weights below this are dropped before renormalizing
_WEIGHT_FLOOR = 1e-14
_TIE_TOL = 1e-15


class ReconstructionError(SepSpecError):
    """The assembled decomposition misses the input state by more than the tolerance."""


@dataclass(frozen=True)
class RotationParameter:
    t: float

    @property
    def unitary(self) -> np.ndarray:
        return rotation_family(self.t)


@dataclass(frozen=True)
class FSample:
    """Overlap difference ``|<a_min|b_l>| - |<b_r|c_min>|`` at one rotation angle.

    ``[f_lo, f_hi]`` contains every value the difference can take over the
    admissible eigenvector and singular-vector choices.
    """

    t: float
    f_selected: float
    f_lo: float
    f_hi: float
    degenerate: bool


@dataclass(frozen=True)
class AlignmentVectors:
    a_min: np.ndarray
    c_min: np.ndarray
    b_l: np.ndarray
    b_r: np.ndarray


@dataclass(frozen=True)
class ProductTerm:
    weight: float
    qubit_state: np.ndarray
    qudit_state: np.ndarray

    def operator(self) -> np.ndarray:
        psi = np.kron(self.qubit_state, self.qudit_state)
        return self.weight * np.outer(psi, psi.conj())


@dataclass(frozen=True)
class SeparableDecomposition:
    terms: list[ProductTerm]
    reconstruction_error: float

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def weights(self) -> np.ndarray:
        return np.array([term.weight for term in self.terms])

    def assemble(self) -> np.ndarray:
        return assemble_terms(self.terms)


@dataclass(frozen=True)
class DecompositionCertificate:
    """Verified block inequality ``lambda_min(A) lambda_min(C) - ||B||^2 = inequality_margin``."""

    t_star: float
    lambda_min_A: float
    lambda_min_C: float
    norm_B: float
    inequality_margin: float
    blocks: BlockForm | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class VerificationReport:
    distance: float
    weight_sum_deviation: float
    max_norm_deviation: float
    negative_weights: int

    def ok(self, tol: float = RECONSTRUCTION_TOL) -> bool:
        return (
            self.distance <= tol
            and self.weight_sum_deviation <= tol
            and self.max_norm_deviation <= tol
            and self.negative_weights == 0
        )


def assemble_terms(terms) -> np.ndarray:
    """``sum_i w_i |v_i><v_i| (x) |w_i><w_i|`` using the vectors exactly as stored."""
    terms = list(terms)
    if not terms:
        raise ValueError("no terms to assemble")
    return sum(term.operator() for term in terms)


# --------------------------------------------------------------------------
# rotation family and the block gap
# --------------------------------------------------------------------------


def rotation_family(t: float) -> np.ndarray:
    """Real rotation ``U(t)`` of the qubit; ``U(0) = I`` and ``U(1) = [[0, -1], [1, 0]]``."""
    c, s = np.cos(np.pi * t / 2), np.sin(np.pi * t / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def rotated_blocks(rho: BipartiteDensityMatrix, t: float) -> BlockForm:
    """Blocks of ``(U(t) (x) I)^dagger rho (U(t) (x) I)``."""
    if rho.dim_a != 2:
        raise DimensionError("the rotation acts on a qubit first factor")
    blocks = to_blocks(rho)
    return _rotate(blocks, np.array([t], dtype=float), squeeze=True)


def _rotate(blocks: BlockForm, ts: np.ndarray, squeeze: bool = False):
    """Blocks after rotating by every ``t`` in ``ts``; stacked along axis 0."""
    c = np.cos(np.pi * ts / 2)[:, None, None]
    s = np.sin(np.pi * ts / 2)[:, None, None]
    a, b, cc = blocks.A, blocks.B, blocks.C
    bd = b.conj().T
    a_t = c * c * a + c * s * (b + bd) + s * s * cc
    b_t = c * c * b - s * s * bd + c * s * (cc - a)
    c_t = s * s * a - c * s * (b + bd) + c * c * cc
    if squeeze:
        return BlockForm(a_t[0], b_t[0], c_t[0])
    return a_t, b_t, c_t


def _gap(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    la = np.linalg.eigvalsh(a)[..., 0]
    lc = np.linalg.eigvalsh(c)[..., 0]
    nb = np.linalg.norm(b, 2, axis=(-2, -1))
    return nb**2 - la * lc


def block_gap(rho: BipartiteDensityMatrix, t: float) -> float:
    """``h(t) = ||B_t||^2 - lambda_min(A_t) lambda_min(C_t)``; ``h(t) <= 0`` means the blocks separate."""
    blocks = rotated_blocks(rho, t)
    return float(_gap(blocks.A, blocks.B, blocks.C))


def block_gap_curve(rho: BipartiteDensityMatrix, ts) -> np.ndarray:
    """Vectorized :func:`block_gap` over an array of angles."""
    if rho.dim_a != 2:
        raise DimensionError("the rotation acts on a qubit first factor")
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    return _gap(*_rotate(to_blocks(rho), ts))


# --------------------------------------------------------------------------
# overlap function f(t)
# --------------------------------------------------------------------------


def _bottom_space(vals: np.ndarray, vecs: np.ndarray, tol: float) -> np.ndarray:
    return vecs[:, vals - vals[0] <= tol]


def _overlap_range(p: np.ndarray, q: np.ndarray) -> tuple[float, float]:
    """Range of ``|<x|y>|`` over unit ``x`` in span(p), ``y`` in span(q); conservative when either span is >1-D."""
    hi = float(np.linalg.norm(p.conj().T @ q, 2))
    if p.shape[1] == 1 and q.shape[1] == 1:
        return hi, hi
    return 0.0, min(hi, 1.0)


def alignment_vectors(blocks: BlockForm) -> AlignmentVectors:
    """Minimal eigenvectors of ``A`` and ``C`` and the top singular pair of ``B``, in the fixed gauge."""
    ea = hermitian_eigendecompose(blocks.A)
    ec = hermitian_eigendecompose(blocks.C)
    sb = singular_value_decompose(blocks.B)
    return AlignmentVectors(
        ea.eigenvectors[:, 0], ec.eigenvectors[:, 0], sb.left_vectors[:, 0], sb.right_vectors[:, 0]
    )


def evaluate_f_bracket(
    rho: BipartiteDensityMatrix, t: float, degeneracy_tol: float = DEGENERACY_TOL
) -> FSample:
    """Sample the set-valued overlap difference at rotation ``t``.

    ``f_selected`` uses the deterministic vector choice of
    :func:`alignment_vectors`. When the minimal eigenvalue of ``A_t`` or
    ``C_t`` or the top singular value of ``B_t`` is degenerate within
    ``degeneracy_tol``, the bracket is widened from eigenspace projectors:
    each overlap ranges over ``[0, sigma_max(P_1 P_2)]``.
    """
    blocks = rotated_blocks(rho, t)
    ea = hermitian_eigendecompose(blocks.A)
    ec = hermitian_eigendecompose(blocks.C)
    sb = singular_value_decompose(blocks.B)

    a_space = _bottom_space(ea.eigenvalues, ea.eigenvectors, degeneracy_tol)
    c_space = _bottom_space(ec.eigenvalues, ec.eigenvectors, degeneracy_tol)
    top = sb.singular_values[0] - sb.singular_values <= degeneracy_tol
    l_space = sb.left_vectors[:, : top.size][:, top]
    r_space = sb.right_vectors[:, : top.size][:, top]

    a, c = ea.eigenvectors[:, 0], ec.eigenvectors[:, 0]
    bl, br = sb.left_vectors[:, 0], sb.right_vectors[:, 0]
    f_sel = abs(np.vdot(a, bl)) - abs(np.vdot(br, c))

    lo1, hi1 = _overlap_range(a_space, l_space)
    lo2, hi2 = _overlap_range(r_space, c_space)
    degenerate = any(space.shape[1] > 1 for space in (a_space, c_space, l_space, r_space))
    f_lo, f_hi = lo1 - hi2, hi1 - lo2
    # keep the selected value inside the bracket despite rounding
    f_lo, f_hi = min(f_lo, f_sel), max(f_hi, f_sel)
    return FSample(float(t), float(f_sel), float(f_lo), float(f_hi), bool(degenerate))


# --------------------------------------------------------------------------
# admissible rotation search
# --------------------------------------------------------------------------


def certificate_at(rho: BipartiteDensityMatrix, t: float) -> DecompositionCertificate:
    blocks = rotated_blocks(rho, t)
    la = float(np.linalg.eigvalsh(blocks.A)[0])
    lc = float(np.linalg.eigvalsh(blocks.C)[0])
    nb = float(np.linalg.norm(blocks.B, 2))
    return DecompositionCertificate(float(t), la, lc, nb, la * lc - nb**2, blocks)


def _f_sign_change_candidates(rho, ts: np.ndarray, iterations: int = 60) -> list[float]:
    """Bisect every sign change of the selected overlap difference along the grid."""
    samples = [evaluate_f_bracket(rho, t) for t in ts]
    out = []
    for left, right in zip(samples[:-1], samples[1:]):
        if left.degenerate or right.degenerate or left.f_selected * right.f_selected > 0:
            continue
        lo, hi, f_lo = left.t, right.t, left.f_selected
        for _ in range(iterations):
            mid = 0.5 * (lo + hi)
            f_mid = evaluate_f_bracket(rho, mid).f_selected
            if f_mid == 0.0:
                lo = hi = mid
                break
            if (f_mid > 0) == (f_lo > 0):
                lo, f_lo = mid, f_mid
            else:
                hi = mid
        out.append(0.5 * (lo + hi))
    return out


def find_admissible_rotation(
    rho: BipartiteDensityMatrix,
    grid: int = DEFAULT_GRID,
    refine_tol: float = DEFAULT_REFINE_TOL,
    tol: float = ADMISSIBLE_TOL,
) -> tuple[RotationParameter, DecompositionCertificate]:
    """Find ``t`` in ``[0, 1]`` with ``h(t) <= tol``.

    Scans ``h`` on ``grid`` equally spaced points (endpoints included), then
    refines around the grid minimizer with a bounded scalar minimization to
    ``refine_tol`` in ``t``. Ties on the grid go to the smaller ``t``. If the
    minimum still exceeds ``tol``, zero crossings of the overlap difference
    are bisected and ``h`` is tried there.

    :raises NotAdmissibleError: carrying the smallest ``h`` seen.
    """
    if grid < 2:
        raise ValueError("grid needs at least two points")
    ts = np.linspace(0.0, 1.0, grid)
    hs = block_gap_curve(rho, ts)
    # ties (up to rounding) resolve to the smaller t
    k = int(np.flatnonzero(hs <= hs.min() + _TIE_TOL)[0])
    best_t, best_h = float(ts[k]), float(hs[k])

    lo, hi = float(ts[max(k - 1, 0)]), float(ts[min(k + 1, grid - 1)])
    res = minimize_scalar(
        lambda t: block_gap(rho, t),
        bounds=(lo, hi),
        method="bounded",
        options={"xatol": refine_tol, "maxiter": 500},
    )
    if res.fun < best_h - _TIE_TOL:
        best_t, best_h = float(res.x), float(res.fun)

    if best_h > tol:
        for t in _f_sign_change_candidates(rho, ts):
            h = block_gap(rho, t)
            if h < best_h:
                best_t, best_h = t, h
    if best_h > tol:
        raise NotAdmissibleError(f"no rotation with h(t) <= {tol:.1e}; smallest h = {best_h:.3e}", best_h)
    return RotationParameter(best_t), certificate_at(rho, best_t)


# --------------------------------------------------------------------------
# constructive pieces
# --------------------------------------------------------------------------


def align_phase(av: AlignmentVectors) -> AlignmentVectors:
    """Re-phase ``a_min`` so that ``<a_min|b_l> = <b_r|c_min>`` as complex numbers."""
    p = np.vdot(av.a_min, av.b_l)
    q = np.vdot(av.b_r, av.c_min)
    if abs(p) < 1e-15 or abs(q) < 1e-15:
        return av
    # <e^{i theta} a|b_l> = e^{-i theta} p must equal q
    phase = (p / abs(p)) * (abs(q) / q)
    return AlignmentVectors(av.a_min * phase, av.c_min, av.b_l, av.b_r)


def _frame(first: np.ndarray, second: np.ndarray, parallel: bool) -> np.ndarray:
    """Unitary whose leading columns are Gram-Schmidt of (first, second)."""
    if parallel:
        return orthonormal_completion(first[:, None])
    resid = second - np.vdot(first, second) * first
    return orthonormal_completion(np.column_stack([first, resid / np.linalg.norm(resid)]))


def construct_aligning_unitary(av: AlignmentVectors, tol: float = 1e-8) -> np.ndarray:
    """Unitary ``V`` with ``V a_min = b_r`` and ``V b_l = c_min``.

    Such a ``V`` exists iff ``<a_min|b_l> = <b_r|c_min>``; the phase freedom
    of ``a_min`` reduces this to equal moduli. ``a_min`` is re-phased by
    :func:`align_phase` first, so the first identity holds for the re-phased
    vector. The frames spanned by ``(a_min, b_l)`` and ``(b_r, c_min)`` have
    equal Gram matrices and are mapped onto each other, then the orthogonal
    complements are matched.

    :raises AlignmentInfeasibleError: if the overlap moduli differ by more than ``tol``.
    """
    p = abs(np.vdot(av.a_min, av.b_l))
    q = abs(np.vdot(av.b_r, av.c_min))
    if abs(p - q) > tol:
        raise AlignmentInfeasibleError(f"overlap moduli differ: |<a|b_l>| = {p:.6g}, |<b_r|c>| = {q:.6g}")
    av = align_phase(av)
    parallel = 1.0 - 0.5 * (p + q) <= 1e-12
    source = _frame(av.a_min, av.b_l, parallel)
    target = _frame(av.b_r, av.c_min, parallel)
    return target @ source.conj().T


def contraction_to_unitaries(b, tol: float = CONTRACTION_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Write a contraction as the average of two unitaries.

    With ``B = W S V^dagger``, ``U_pm = W (S +- i sqrt(I - S^2)) V^dagger`` are
    unitary and ``(U_+ + U_-)/2 = B``. Singular values in ``(1, 1 + tol]``
    are clamped to one.

    :raises ContractionViolationError: if ``||B|| > 1 + tol``.
    """
    sv = singular_value_decompose(b)
    s = sv.singular_values
    if s.size and s[0] > 1.0 + tol:
        raise ContractionViolationError(f"operator norm {s[0]!r} exceeds 1")
    s = np.clip(s, 0.0, 1.0)
    w, v = sv.left_vectors, sv.right_vectors
    comp = np.sqrt(1.0 - s**2)
    u_plus = (w * (s + 1j * comp)) @ v.conj().T
    u_minus = (w * (s - 1j * comp)) @ v.conj().T
    return u_plus, u_minus


def unitary_core_to_products(u, tol: float = 1e-10) -> list[ProductTerm]:
    """Products summing to ``[[I, U], [U^dagger, I]]``.

    With ``U = sum_k e^{i theta_k} |w_k><w_k|`` the block matrix equals
    ``sum_k 2 |phi_k><phi_k| (x) |w_k><w_k|`` with
    ``|phi_k> = (|0> + e^{-i theta_k}|1>)/sqrt(2)``. Every returned term has
    weight 2, so the weights sum to ``2n``.
    """
    u = require_unitary(u, tol, name="core unitary")
    # complex Schur form of a normal matrix is diagonal with unitary Z
    t_mat, z = schur(u, output="complex")
    phases = np.diagonal(t_mat)
    phases = phases / np.abs(phases)
    terms = []
    for k in range(u.shape[0]):
        qubit = np.array([1.0, phases[k].conjugate()], dtype=complex) / np.sqrt(2)
        terms.append(ProductTerm(2.0, qubit, z[:, k].copy()))
    return terms


def _eigen_terms(mat: np.ndarray, qubit: np.ndarray) -> list[ProductTerm]:
    es = hermitian_eigendecompose(mat)
    return [
        ProductTerm(float(val), qubit, es.eigenvectors[:, k].copy())
        for k, val in enumerate(es.eigenvalues)
        if val > _WEIGHT_FLOOR
    ]


def _finalize(terms: list[ProductTerm], target: np.ndarray) -> SeparableDecomposition:
    terms = [term for term in terms if term.weight >= _WEIGHT_FLOOR]
    total = sum(term.weight for term in terms)
    trace = float(np.trace(target).real)
    scale = trace / total
    terms = [ProductTerm(term.weight * scale, term.qubit_state, term.qudit_state) for term in terms]
    err = float(np.linalg.norm(assemble_terms(terms) - target))
    return SeparableDecomposition(terms, err)


def decompose_blocks(blocks: BlockForm, tol: float = BLOCK_TOL) -> SeparableDecomposition:
    """Separable decomposition of ``[[A, B], [B^dagger, C]]`` when ``||B||^2 <= lambda_min(A) lambda_min(C)``.

    Produces at most ``4n`` terms: eigen-terms of ``A - a I`` on ``|0>`` and of
    ``C - c I`` on ``|1>``, plus ``2n`` terms for the core
    ``[[a I, B], [B^dagger, c I]]``. If ``a c`` vanishes the precondition forces
    ``B ~ 0`` and ``A``, ``C`` are decomposed directly.

    :raises BlockInequalityError: if ``||B||^2 > a c + tol``.
    """
    a_mat, b_mat, c_mat = blocks.A, blocks.B, blocks.C
    n = blocks.n
    lam_a = float(np.linalg.eigvalsh(a_mat)[0])
    lam_c = float(np.linalg.eigvalsh(c_mat)[0])
    norm_b = float(np.linalg.norm(b_mat, 2))
    if norm_b**2 > lam_a * lam_c + tol:
        raise BlockInequalityError(
            f"||B||^2 = {norm_b**2:.6e} exceeds lambda_min(A) lambda_min(C) = {lam_a * lam_c:.6e}"
        )
    e0 = np.array([1.0, 0.0], dtype=complex)
    e1 = np.array([0.0, 1.0], dtype=complex)
    target = blocks.assemble()

    if min(lam_a, lam_c) <= _WEIGHT_FLOOR:
        terms = _eigen_terms(a_mat, e0) + _eigen_terms(c_mat, e1)
        return _finalize(terms, target)

    eye = np.eye(n)
    terms = _eigen_terms(a_mat - lam_a * eye, e0) + _eigen_terms(c_mat - lam_c * eye, e1)

    scale = np.sqrt(lam_a * lam_c)
    # eigensolver noise can push ||B / scale|| marginally past 1
    sv = singular_value_decompose(b_mat / scale)
    kappa = (sv.left_vectors * np.minimum(sv.singular_values, 1.0)) @ sv.right_vectors.conj().T
    d_inv = np.array([np.sqrt(lam_a), np.sqrt(lam_c)])
    for unitary in contraction_to_unitaries(kappa):
        for term in unitary_core_to_products(unitary):
            psi = d_inv * term.qubit_state
            norm2 = float(np.vdot(psi, psi).real)
            # factor 1/2 from averaging the two unitaries
            terms.append(ProductTerm(0.5 * term.weight * norm2, psi / np.sqrt(norm2), term.qudit_state))
    return _finalize(terms, target)


def decompose(
    rho: BipartiteDensityMatrix,
    require_condition: bool = True,
    grid: int = DEFAULT_GRID,
    refine_tol: float = DEFAULT_REFINE_TOL,
    tol: float = RECONSTRUCTION_TOL,
) -> tuple[SeparableDecomposition, DecompositionCertificate]:
    """Explicit separable decomposition of a ``2 (x) n`` state that is separable from spectrum.

    :param rho: the state.
    :param require_condition: refuse spectra failing the absolute separability
        condition up front; with ``False`` the search runs anyway and fails
        with :class:`NotAdmissibleError` when no frame works.
    :param grid: number of grid points for the rotation scan.
    :param refine_tol: resolution of the refinement in ``t``.
    :param tol: largest acceptable Frobenius reconstruction error.
    :return: the decomposition (weights sum to one, at most ``4n`` terms) and
        the certificate of the rotated frame.
    """
    if rho.dim_a != 2:
        raise DimensionError("decompose needs a qubit first factor")
    if require_condition:
        report = abs_sep_condition(spectrum_of(rho), rho.dim_b)
        if not report.holds:
            raise SpectralConditionError(
                f"spectrum fails the separability condition (margin {report.margin:.3e})"
            )
    rotation, certificate = find_admissible_rotation(rho, grid, refine_tol)
    u = rotation.unitary
    rotated = conjugate_local(rho, u)
    local = decompose_blocks(to_blocks(rotated))
    # rho = (U (x) I) rotated (U (x) I)^dagger, so qubit factors map v -> U v
    terms = [ProductTerm(term.weight, u @ term.qubit_state, term.qudit_state) for term in local.terms]
    err = float(np.linalg.norm(assemble_terms(terms) - rho.matrix))
    if err > tol:
        raise ReconstructionError(f"reconstruction error {err:.3e} exceeds {tol:.1e}")
    return SeparableDecomposition(terms, err), certificate


def decomposition_report(rho: BipartiteDensityMatrix, d: SeparableDecomposition) -> VerificationReport:
    """Distance to ``rho`` plus the weight and normalization violations of ``d``."""
    n_a, n_b = rho.dims
    for term in d.terms:
        if term.qubit_state.size != n_a or term.qudit_state.size != n_b:
            raise DimensionError(
                f"term dims ({term.qubit_state.size}, {term.qudit_state.size}) do not match state dims {rho.dims}"
            )
    distance = float(np.linalg.norm(assemble_terms(d.terms) - rho.matrix))
    weights = d.weights
    norms = [np.linalg.norm(t.qubit_state) for t in d.terms] + [np.linalg.norm(t.qudit_state) for t in d.terms]
    return VerificationReport(
        distance=distance,
        weight_sum_deviation=float(abs(weights.sum() - 1.0)),
        max_norm_deviation=float(max(abs(x - 1.0) for x in norms)),
        negative_weights=int(np.sum(weights < 0)),
    )


def verify_decomposition(rho: BipartiteDensityMatrix, d: SeparableDecomposition) -> float:
    """Frobenius distance between ``rho`` and the reassembled decomposition."""
    return decomposition_report(rho, d).distance


def scan(rho: BipartiteDensityMatrix, grid: int = 1001, degeneracy_tol: float = DEGENERACY_TOL) -> list[tuple]:
    """Rows ``(t, h, f_selected, f_lo, f_hi, degenerate)`` on an even grid over ``[0, 1]``."""
    ts = np.linspace(0.0, 1.0, grid)
    hs = block_gap_curve(rho, ts)
    rows = []
    for t, h in zip(ts, hs):
        f = evaluate_f_bracket(rho, float(t), degeneracy_tol)
        rows.append((float(t), float(h), f.f_selected, f.f_lo, f.f_hi, f.degenerate))
    return rows


__all__ = [
    "AlignmentVectors",
    "DecompositionCertificate",
    "FSample",
    "ProductTerm",
    "ReconstructionError",
    "RotationParameter",
    "SeparableDecomposition",
    "VerificationReport",
    "align_phase",
    "alignment_vectors",
    "block_gap",
    "block_gap_curve",
    "construct_aligning_unitary",
    "contraction_to_unitaries",
    "decompose",
    "decompose_blocks",
    "decomposition_report",
    "evaluate_f_bracket",
    "find_admissible_rotation",
    "rotation_family",
    "scan",
    "unitary_core_to_products",
    "verify_decomposition",
]
