"""Spectrum-level separability tests for qubit-qudit states and randomized orbit oracles.

For ``rho`` in ``M_2 (x) M_n`` with eigenvalues ``l_1 >= ... >= l_2n`` the
state is separable from spectrum (equivalently PPT from spectrum) iff

    l_1 <= l_{2n-1} + 2 sqrt(l_{2n-2} l_{2n}).

The oracles here (orbit sampling, witness search) probe the same property
directly from the definition and are used to cross-check the closed form.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from sepspec.exceptions import (
    DimensionError,
    SamplingBudgetError,
    UnsupportedDimensionError,
    ValidationError,
)
from sepspec.linalg import RngLike, as_generator, is_unitary, random_haar_unitary
from sepspec.states import (
    BipartiteDensityMatrix,
    BlockForm,
    Spectrum,
    conjugate_global,
    is_ppt,
    min_pt_eigenvalue,
    partial_transpose_matrix,
)

REPORT_TOL = 1e-10
WITNESS_THRESHOLD = 1e-8
MAX_REJECTIONS = 10**6


@dataclass(frozen=True)
class CriterionReport:
    """Outcome of an inequality test ``lhs <= rhs``; ``margin = rhs - lhs``."""

    condition_name: str
    holds: bool
    lhs: float
    rhs: float
    margin: float

    @classmethod
    def from_sides(cls, name: str, lhs: float, rhs: float, tol: float = REPORT_TOL) -> "CriterionReport":
        margin = rhs - lhs
        return cls(name, bool(margin >= -tol), float(lhs), float(rhs), float(margin))


@dataclass(frozen=True)
class WitnessResult:
    """Best unitary found by :func:`npt_witness_search`.

    ``unitary`` is ``None`` unless ``found``; ``iterations`` counts objective
    evaluations.
    """

    found: bool
    unitary: np.ndarray | None
    min_pt_eigenvalue: float
    iterations: int


def _as_spectrum(spec) -> Spectrum:
    return spec if isinstance(spec, Spectrum) else Spectrum(spec)


def abs_sep_condition(spec, n: int | None = None, tol: float = REPORT_TOL) -> CriterionReport:
    """Test ``l_1 <= l_{2n-1} + 2 sqrt(l_{2n-2} l_{2n})`` for a ``2 (x) n`` spectrum.

    The single report answers both "separable from spectrum" and "PPT from
    spectrum", which coincide when the first factor is a qubit.

    :param spec: a :class:`Spectrum` or anything convertible to one.
    :param n: qudit dimension; inferred from ``len(spec)`` when omitted.
    :param tol: a report holds when ``margin >= -tol``.
    """
    spec = _as_spectrum(spec)
    if n is None:
        if len(spec) % 2:
            raise DimensionError(f"odd spectrum length {len(spec)} is not 2 x n")
        n = len(spec) // 2
    if len(spec) != 2 * n:
        raise DimensionError(f"spectrum has {len(spec)} entries, expected {2 * n}")
    if n < 2:
        raise DimensionError("the condition needs n >= 2")
    lam = spec.values
    # 1-based l_{2n-2}, l_{2n-1}, l_{2n} are the last three entries
    rhs = lam[2 * n - 2] + 2.0 * np.sqrt(lam[2 * n - 3] * lam[2 * n - 1])
    return CriterionReport.from_sides(f"abs_sep_2x{n}", lam[0], rhs, tol)


def abs_sep_margins(spectra: np.ndarray) -> np.ndarray:
    """Vectorized margins of :func:`abs_sep_condition` for rows sorted descending."""
    lam = np.asarray(spectra, dtype=float)
    size = lam.shape[-1]
    return lam[..., size - 2] + 2.0 * np.sqrt(lam[..., size - 3] * lam[..., size - 1]) - lam[..., 0]


def gurvits_barnum_ball(spec, tol: float = REPORT_TOL) -> CriterionReport:
    """Purity test ``tr(rho^2) <= 1/(N - 1)`` for the separable ball around ``I/N``.

    Every state whose purity is at most ``1/(N-1)`` lies in the largest
    Frobenius ball of separable states centered at the maximally mixed state,
    whatever the bipartition.
    """
    spec = _as_spectrum(spec)
    size = len(spec)
    if size < 2:
        raise DimensionError("total dimension must be at least 2")
    purity = float(np.sum(spec.values**2))
    return CriterionReport.from_sides("gurvits_barnum_ball", purity, 1.0 / (size - 1), tol)


def three_qubit_all_cuts(spec, tol: float = REPORT_TOL) -> CriterionReport:
    """Three-qubit spectra with ``l_1 <= l_7 + 2 sqrt(l_6 l_8)`` are separable across every cut.

    Each cut is a ``2 (x) 4`` bipartition and the condition depends only on the
    spectrum, so one report covers all three.
    """
    spec = _as_spectrum(spec)
    if len(spec) != 8:
        raise DimensionError(f"three-qubit spectrum needs 8 entries, got {len(spec)}")
    report = abs_sep_condition(spec, 4, tol)
    return CriterionReport("three_qubit_all_cuts", report.holds, report.lhs, report.rhs, report.margin)


def orbit_ppt_sample(
    rho: BipartiteDensityMatrix, trials: int, rng: RngLike = None, tol: float = REPORT_TOL
) -> tuple[bool, float]:
    """Conjugate ``rho`` by ``trials`` Haar unitaries and track the smallest PT eigenvalue.

    A necessary-condition sampler: it can refute PPT from spectrum, never prove it.

    :return: ``(all_ppt, worst)`` where ``worst`` is the minimum over trials of
        ``lambda_min((U^dagger rho U)^Gamma)``.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    gen = as_generator(rng)
    dim_a, dim_b = rho.dims
    worst = np.inf
    for _ in range(trials):
        u = random_haar_unitary(dim_a * dim_b, gen)
        sigma = u.conj().T @ rho.matrix @ u
        pt = partial_transpose_matrix(sigma, dim_a, dim_b)
        worst = min(worst, float(np.linalg.eigvalsh((pt + pt.conj().T) / 2)[0]))
    return bool(worst >= -tol), worst


def _pt_min_pair(sigma: np.ndarray, dim_a: int, dim_b: int) -> tuple[float, np.ndarray]:
    pt = partial_transpose_matrix(sigma, dim_a, dim_b)
    vals, vecs = np.linalg.eigh((pt + pt.conj().T) / 2)
    return float(vals[0]), vecs[:, 0]


def npt_witness_search(
    spec,
    dims: tuple[int, int],
    budget: int = 2000,
    rng: RngLike = None,
    threshold: float = WITNESS_THRESHOLD,
    max_local_steps: int = 200,
) -> WitnessResult:
    """Search the unitary orbit of ``diag(spec)`` for a state that is not PPT.

    Minimizes ``lambda_min((U^dagger L U)^Gamma)`` over unitaries ``U`` with
    random Haar restarts and Riemannian descent along skew-Hermitian
    directions ``U <- U expm(eta G)``, halving ``eta`` until the objective
    decreases. ``G = [PT(|v><v|), U^dagger L U]`` is the gradient direction,
    with ``v`` the minimal eigenvector of the partial transpose.

    :param spec: eigenvalues defining the orbit.
    :param dims: local dimensions ``(m, n)``.
    :param budget: total number of objective evaluations.
    :param threshold: a witness needs ``lambda_min <= -threshold``.
    """
    spec = _as_spectrum(spec)
    dim_a, dim_b = dims
    size = dim_a * dim_b
    if len(spec) != size:
        raise DimensionError(f"spectrum has {len(spec)} entries, dims {dims} need {size}")
    gen = as_generator(rng)
    lam = spec.values

    best_val, best_u = np.inf, None
    evals = 0
    while evals < budget:
        u = random_haar_unitary(size, gen)
        val, vec = _pt_min_pair((u.conj().T * lam) @ u, dim_a, dim_b)
        evals += 1
        step = 0.5
        for _ in range(max_local_steps):
            if evals >= budget:
                break
            sigma = (u.conj().T * lam) @ u
            x = partial_transpose_matrix(np.outer(vec, vec.conj()), dim_a, dim_b)
            grad = x @ sigma - sigma @ x
            gnorm = np.linalg.norm(grad)
            if gnorm < 1e-14:
                break
            direction = grad / gnorm
            improved = False
            while evals < budget and step > 1e-12:
                cand = u @ expm(step * direction)
                cval, cvec = _pt_min_pair((cand.conj().T * lam) @ cand, dim_a, dim_b)
                evals += 1
                if cval < val:
                    u, val, vec = cand, cval, cvec
                    step = min(2.0 * step, 1.0)
                    improved = True
                    break
                step /= 2.0
            if not improved:
                break
        if val < best_val:
            best_val, best_u = val, u
        if best_val <= -threshold:
            break

    found = bool(best_val <= -threshold)
    return WitnessResult(found, best_u if found else None, float(best_val), evals)


def recheck_witness(spec, dims: tuple[int, int], unitary: np.ndarray) -> float:
    """Independently recompute ``lambda_min((U^dagger diag(spec) U)^Gamma)`` through the state API."""
    spec = _as_spectrum(spec)
    diag_state = BipartiteDensityMatrix(np.diag(spec.values).astype(complex), dims[0], dims[1])
    return min_pt_eigenvalue(conjugate_global(diag_state, unitary))


def ppt_inequality_probe(
    blocks: BlockForm, x, z, w, tol: float = 1e-10
) -> tuple[float, float]:
    """Evaluate both sides of ``<x|A|x> <z|C|z> >= |<z|W B W|x>|^2``.

    The inequality holds for every unit ``x``, ``z`` and unitary ``W`` when the
    state is PPT from spectrum; the caller compares the two sides.

    :return: ``(lhs, rhs)``.
    """
    x = np.asarray(x, dtype=complex).ravel()
    z = np.asarray(z, dtype=complex).ravel()
    for name, vec in (("x", x), ("z", z)):
        if abs(np.linalg.norm(vec) - 1.0) > tol:
            raise ValidationError(f"{name} is not a unit vector")
    if not is_unitary(w, tol):
        raise ValidationError("W is not unitary")
    w = np.asarray(w, dtype=complex)
    lhs = float(np.vdot(x, blocks.A @ x).real * np.vdot(z, blocks.C @ z).real)
    rhs = float(abs(np.vdot(z, w @ blocks.B @ w @ x)) ** 2)
    return lhs, rhs


def exact_separability_small(rho: BipartiteDensityMatrix, tol: float = REPORT_TOL) -> bool:
    """Exact separability verdict in ``2 (x) 2`` and ``2 (x) 3``, where PPT is sufficient."""
    if rho.dims not in {(2, 2), (2, 3)}:
        raise UnsupportedDimensionError(
            f"PPT decides separability only for dims (2, 2) and (2, 3), got {rho.dims}"
        )
    return is_ppt(rho, tol)


def sample_spectra(
    size: int,
    count: int,
    rng: RngLike = None,
    condition: str | None = None,
    max_rejections: int = MAX_REJECTIONS,
    batch: int = 4096,
) -> np.ndarray:
    """Draw spectra from the flat Dirichlet distribution, optionally filtered.

    :param size: number of eigenvalues (``2n`` when filtering).
    :param count: number of spectra returned, as rows sorted descending.
    :param condition: ``None``, ``"pass"`` or ``"fail"`` for the qubit-qudit
        absolute separability condition.
    :param max_rejections: consecutive rejections tolerated before giving up.
    :raises SamplingBudgetError: when the filter rejects ``max_rejections``
        draws in a row.
    """
    if condition not in (None, "pass", "fail"):
        raise ValueError(f"condition must be None, 'pass' or 'fail', got {condition!r}")
    if condition is not None and (size % 2 or size < 4):
        raise DimensionError("filtering needs a 2 x n spectrum with n >= 2")
    gen = as_generator(rng)
    kept: list[np.ndarray] = []
    have = 0
    streak = 0
    while have < count:
        draws = -np.sort(-gen.dirichlet(np.ones(size), size=batch), axis=1)
        if condition is None:
            mask = np.ones(batch, dtype=bool)
        else:
            margins = abs_sep_margins(draws)
            mask = margins >= -REPORT_TOL if condition == "pass" else margins < -REPORT_TOL
        hits = np.flatnonzero(mask)
        if hits.size == 0:
            streak += batch
        else:
            streak = batch - 1 - hits[-1]
            kept.append(draws[hits])
            have += hits.size
        if streak >= max_rejections:
            raise SamplingBudgetError(
                f"no spectrum satisfied condition={condition!r} in {streak} consecutive draws"
            )
    return np.vstack(kept)[:count]
