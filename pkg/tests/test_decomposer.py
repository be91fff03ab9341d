import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sepspec.criteria import sample_spectra
from sepspec.decomposer import (
    AlignmentVectors,
    ProductTerm,
    RotationParameter,
    SeparableDecomposition,
    align_phase,
    alignment_vectors,
    block_gap,
    block_gap_curve,
    construct_aligning_unitary,
    contraction_to_unitaries,
    decompose,
    decompose_blocks,
    decomposition_report,
    evaluate_f_bracket,
    find_admissible_rotation,
    rotated_blocks,
    rotation_family,
    scan,
    unitary_core_to_products,
    verify_decomposition,
)
from sepspec.exceptions import (
    AlignmentInfeasibleError,
    ContractionViolationError,
    DimensionError,
    BlockInequalityError,
    NotAdmissibleError,
    SpectralConditionError,
    ValidationError,
)
from sepspec.linalg import is_unitary, random_haar_unitary
from sepspec.states import (
    BipartiteDensityMatrix,
    BlockForm,
    Spectrum,
    maximally_mixed,
    partial_transpose_matrix,
    product_state,
    random_state_with_spectrum,
    to_blocks,
)

from conftest import BOUNDARY_RHO, random_state


def _gap_oracle(rho, t):
    """h(t) from an explicit Kronecker conjugation, independent of the closed-form rotation."""
    n = rho.dim_b
    full = np.kron(rotation_family(t), np.eye(n))
    sigma = full.conj().T @ rho.matrix @ full
    a, b, c = sigma[:n, :n], sigma[:n, n:], sigma[n:, n:]
    return np.linalg.norm(b, 2) ** 2 - np.linalg.eigvalsh(a)[0] * np.linalg.eigvalsh(c)[0]


def _unit(dim, gen):
    v = gen.standard_normal(dim) + 1j * gen.standard_normal(dim)
    return v / np.linalg.norm(v)


def _core(u):
    n = u.shape[0]
    return np.block([[np.eye(n), u], [u.conj().T, np.eye(n)]])


class TestRotationFamily:
    def test_values(self):
        np.testing.assert_allclose(rotation_family(0), np.eye(2), atol=0)
        np.testing.assert_allclose(rotation_family(1), [[0, -1], [1, 0]], atol=1e-16)
        np.testing.assert_allclose(rotation_family(0.5), np.array([[1, -1], [1, 1]]) / np.sqrt(2), atol=1e-16)

    @settings(max_examples=50, deadline=None)
    @given(st.floats(-5, 5))
    def test_orthogonal_and_antiperiodic(self, t):
        u = rotation_family(t)
        assert is_unitary(u, 1e-14)
        np.testing.assert_allclose(rotation_family(t + 2), -u, atol=1e-14)

    def test_parameter_object(self):
        np.testing.assert_array_equal(RotationParameter(0.25).unitary, rotation_family(0.25))


class TestBlockGap:
    def test_boundary_values(self, boundary_state):
        assert block_gap(boundary_state, 0.0) == pytest.approx(1 / 121, abs=1e-12)
        assert abs(block_gap(boundary_state, 0.5)) <= 1e-12

    @pytest.mark.parametrize("n", [2, 3, 6])
    def test_maximally_mixed(self, n):
        hs = block_gap_curve(maximally_mixed(2, n), np.linspace(0, 1, 11))
        np.testing.assert_allclose(hs, -1 / (2 * n) ** 2, atol=1e-15)

    def test_matches_kron_oracle(self, rng):
        for n in (2, 3, 5):
            rho = random_state((2, n), rng)
            ts = rng.uniform(-1, 2, 7)
            np.testing.assert_allclose(block_gap_curve(rho, ts), [_gap_oracle(rho, t) for t in ts], atol=1e-14)

    def test_rotated_blocks_match_kron_oracle(self, rng):
        rho = random_state((2, 4), rng)
        full = np.kron(rotation_family(0.3), np.eye(4))
        expected = full.conj().T @ rho.matrix @ full
        np.testing.assert_allclose(rotated_blocks(rho, 0.3).assemble(), expected, atol=1e-15)

    def test_periodicity_and_block_swap(self, rng):
        rho = random_state((2, 3), rng)
        assert block_gap(rho, 1.0) == pytest.approx(block_gap(rho, 0.0), abs=1e-12)
        assert block_gap(rho, 2.3) == pytest.approx(block_gap(rho, 0.3), abs=1e-14)

    def test_continuity(self):
        gen = np.random.default_rng(99)
        ts = np.linspace(0, 1, 1001)
        worst = 0.0
        for k in range(1000):
            rho = random_state((2, 2 + k % 7), gen)
            worst = max(worst, np.max(np.abs(np.diff(block_gap_curve(rho, ts)))))
        assert worst <= 0.1
        # empirical Lipschitz constant of the whole suite
        assert worst / 1e-3 < 10

    def test_requires_qubit(self):
        with pytest.raises(DimensionError):
            block_gap(maximally_mixed(3, 2), 0.0)


class TestFBracket:
    def test_boundary_state_at_zero(self, boundary_state):
        av = alignment_vectors(to_blocks(boundary_state))
        # SVD oracle: B = 2/11 |e2><e1|
        np.testing.assert_allclose(np.abs(av.b_l), [0, 1], atol=1e-15)
        np.testing.assert_allclose(np.abs(av.b_r), [1, 0], atol=1e-15)
        np.testing.assert_allclose(np.abs(av.a_min), [1, 0], atol=1e-15)
        np.testing.assert_allclose(np.abs(av.c_min), [1, 0], atol=1e-15)
        f = evaluate_f_bracket(boundary_state, 0.0)
        assert not f.degenerate
        assert f.f_selected == pytest.approx(-1.0, abs=1e-14)
        assert f.f_lo == pytest.approx(-1.0, abs=1e-14)
        assert f.f_hi == pytest.approx(-1.0, abs=1e-14)

    def test_zero_off_diagonal_block_gives_full_bracket(self):
        rho = BipartiteDensityMatrix(np.diag([0.1, 0.2, 0.3, 0.4]), 2, 2)
        # any t keeps B = 0 only at t = 0 for non-scalar blocks
        f = evaluate_f_bracket(rho, 0.0)
        assert f.degenerate
        assert (f.f_lo, f.f_hi) == (-1.0, 1.0)

    def test_sign_flip(self, rng):
        checked = 0
        for k in range(200):
            rho = random_state((2, 2 + k % 5), rng)
            f0, f1 = evaluate_f_bracket(rho, 0.0), evaluate_f_bracket(rho, 1.0)
            if f0.degenerate or f1.degenerate:
                continue
            checked += 1
            assert f1.f_selected == pytest.approx(-f0.f_selected, abs=1e-10)
        assert checked > 150

    @settings(max_examples=40, deadline=None)
    @given(st.integers(2, 5), st.integers(0, 2**32 - 1), st.floats(0, 1))
    def test_bracket_invariants(self, n, seed, t):
        f = evaluate_f_bracket(random_state((2, n), np.random.default_rng(seed)), t)
        assert f.f_lo <= f.f_selected <= f.f_hi
        assert -1 - 1e-12 <= f.f_selected <= 1 + 1e-12

    def test_alignment_vector_invariants(self, rng):
        blocks = to_blocks(random_state((2, 4), rng))
        av = alignment_vectors(blocks)
        la, lc = np.linalg.eigvalsh(blocks.A)[0], np.linalg.eigvalsh(blocks.C)[0]
        assert np.vdot(av.a_min, blocks.A @ av.a_min).real == pytest.approx(la, abs=1e-10)
        assert np.vdot(av.c_min, blocks.C @ av.c_min).real == pytest.approx(lc, abs=1e-10)
        assert abs(np.vdot(av.b_l, blocks.B @ av.b_r)) == pytest.approx(np.linalg.norm(blocks.B, 2), abs=1e-10)


class TestAdmissibleRotation:
    def test_boundary_state_near_half(self, boundary_state):
        rot, cert = find_admissible_rotation(boundary_state)
        assert rot.t == pytest.approx(0.5, abs=1e-3)
        assert cert.inequality_margin >= -1e-10
        assert cert.norm_B**2 == pytest.approx(9 / 484, abs=1e-9)

    def test_maximally_mixed_at_zero(self):
        rot, cert = find_admissible_rotation(maximally_mixed(2, 4))
        assert rot.t == 0.0
        assert cert.inequality_margin == pytest.approx(1 / 64)

    def test_pure_entangled_state_not_admissible(self, bell_state):
        with pytest.raises(NotAdmissibleError) as info:
            find_admissible_rotation(bell_state)
        assert info.value.min_gap > 1e-10

    def test_passing_spectra_always_have_a_grid_point(self):
        # the grid alone, without refinement, already reaches h <= 1e-10
        gen = np.random.default_rng(2024)
        ts = np.linspace(0, 1, 1024)
        for n in range(2, 9):
            for lam in sample_spectra(2 * n, 100, gen, condition="pass"):
                rho = random_state_with_spectrum(Spectrum(lam), (2, n), gen)
                assert block_gap_curve(rho, ts).min() <= 1e-10

    def test_rejects_tiny_grid(self, boundary_state):
        with pytest.raises(ValueError):
            find_admissible_rotation(boundary_state, grid=1)


class TestAligningUnitary:
    def test_all_equal(self):
        e1 = np.array([1, 0, 0], dtype=complex)
        v = construct_aligning_unitary(AlignmentVectors(e1, e1, e1, e1))
        assert is_unitary(v, 1e-12)
        np.testing.assert_allclose(v @ e1, e1, atol=1e-12)

    def test_swap(self):
        e1, e2 = np.eye(2, dtype=complex)
        v = construct_aligning_unitary(AlignmentVectors(a_min=e1, c_min=e1, b_l=e2, b_r=e2))
        assert is_unitary(v, 1e-12)
        np.testing.assert_allclose(np.abs(v), [[0, 1], [1, 0]], atol=1e-12)

    @pytest.mark.parametrize("n", [2, 3, 5, 8])
    def test_random_quadruple(self, n, rng):
        for _ in range(20):
            a, b_l, b_r, perp = (_unit(n, rng) for _ in range(4))
            q = abs(np.vdot(a, b_l))
            perp -= np.vdot(b_r, perp) * b_r
            perp /= np.linalg.norm(perp)
            # |<b_r|c>| = |<a|b_l>| with an arbitrary relative phase
            c = q * np.exp(1j * rng.uniform(0, 2 * np.pi)) * b_r + np.sqrt(1 - q**2) * perp
            av = AlignmentVectors(a_min=a, c_min=c, b_l=b_l, b_r=b_r)
            v = construct_aligning_unitary(av)
            phased = align_phase(av).a_min
            assert is_unitary(v, 1e-12)
            np.testing.assert_allclose(v @ phased, b_r, atol=1e-10)
            np.testing.assert_allclose(v @ b_l, c, atol=1e-10)
            assert abs(abs(np.vdot(phased, a)) - 1) < 1e-12

    def test_infeasible(self):
        e1, e2 = np.eye(2, dtype=complex)
        with pytest.raises(AlignmentInfeasibleError):
            construct_aligning_unitary(AlignmentVectors(a_min=e1, c_min=e1, b_l=e1, b_r=e2))


class TestContraction:
    def test_unitary_input(self, rng):
        u = random_haar_unitary(4, rng)
        plus, minus = contraction_to_unitaries(u)
        np.testing.assert_allclose(plus, u, atol=1e-12)
        np.testing.assert_allclose(minus, u, atol=1e-12)

    def test_zero(self):
        plus, minus = contraction_to_unitaries(np.zeros((3, 3)))
        assert is_unitary(plus, 1e-12) and is_unitary(minus, 1e-12)
        np.testing.assert_allclose(plus, -minus, atol=1e-15)
        np.testing.assert_allclose((plus + minus) / 2, 0, atol=1e-15)

    def test_diagonal(self):
        plus, minus = contraction_to_unitaries(np.diag([0.5, 1.0]))
        w = 0.5 + 1j * np.sqrt(3) / 2
        np.testing.assert_allclose(plus, np.diag([w, 1]), atol=1e-15)
        np.testing.assert_allclose(minus, np.diag([w.conjugate(), 1]), atol=1e-15)

    def test_random(self, rng):
        for n in range(1, 9):
            b = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            b *= rng.uniform(0, 1) / np.linalg.norm(b, 2)
            plus, minus = contraction_to_unitaries(b)
            assert is_unitary(plus, 1e-12) and is_unitary(minus, 1e-12)
            np.testing.assert_allclose((plus + minus) / 2, b, atol=1e-12)

    def test_clamps_noise_and_rejects_violation(self):
        plus, _ = contraction_to_unitaries(np.diag([1 + 1e-12, 0.5]))
        assert is_unitary(plus, 1e-12)
        with pytest.raises(ContractionViolationError):
            contraction_to_unitaries(np.diag([1.1, 0.5]))


class TestUnitaryCore:
    def test_identity(self):
        terms = unitary_core_to_products(np.eye(3))
        assert len(terms) == 3
        for term in terms:
            np.testing.assert_allclose(term.qubit_state, np.array([1, 1]) / np.sqrt(2), atol=1e-15)
        np.testing.assert_allclose(sum(t.operator() for t in terms), _core(np.eye(3)), atol=1e-12)

    def test_reflection(self):
        terms = unitary_core_to_products(np.diag([1.0, -1.0]))
        qubits = sorted((np.round(t.qubit_state.real * np.sqrt(2)).tolist() for t in terms), reverse=True)
        assert qubits == [[1, 1], [1, -1]]

    def test_haar(self, rng):
        for n in (2, 5, 8):
            u = random_haar_unitary(n, rng)
            terms = unitary_core_to_products(u)
            assert len(terms) == n
            assert all(t.weight == 2.0 for t in terms)
            np.testing.assert_allclose(sum(t.operator() for t in terms), _core(u), atol=1e-10)

    def test_rejects_non_unitary(self):
        with pytest.raises(ValidationError):
            unitary_core_to_products(np.diag([1.0, 0.5]))


class TestBlockDecomposition:
    @pytest.mark.parametrize("n", [2, 4])
    def test_maximally_mixed_blocks(self, n):
        eye = np.eye(n) / (2 * n)
        d = decompose_blocks(BlockForm(eye, np.zeros((n, n)), eye))
        assert d.reconstruction_error <= 1e-14
        assert len(d) <= 4 * n

    def test_hadamard_frame(self, hadamard_state):
        d = decompose_blocks(to_blocks(hadamard_state))
        assert len(d) <= 8
        assert d.reconstruction_error <= 1e-10
        np.testing.assert_allclose(d.assemble(), hadamard_state.matrix, atol=1e-10)

    def test_unitary_core(self, rng):
        n = 4
        u = random_haar_unitary(n, rng)
        core = _core(u) / (2 * n)
        d = decompose_blocks(to_blocks(BipartiteDensityMatrix(core, 2, n)))
        # A' = C' = 0, so only the n core terms of each averaged unitary survive
        assert len(d) == 2 * n
        assert d.reconstruction_error <= 1e-10

    def test_rank_deficient_diagonal_blocks(self):
        rho = np.diag([0.5, 0.0, 0.0, 0.5])
        d = decompose_blocks(to_blocks(BipartiteDensityMatrix(rho, 2, 2)))
        assert len(d) == 2
        assert d.reconstruction_error <= 1e-15

    def test_inapplicable(self, boundary_state):
        with pytest.raises(BlockInequalityError):
            decompose_blocks(to_blocks(boundary_state))


def _check_decomposition(rho, d, cert):
    n = rho.dim_b
    assert d.reconstruction_error <= 1e-8
    assert len(d) <= 4 * n
    assert np.all(d.weights >= 0)
    assert d.weights.sum() == pytest.approx(1.0, abs=1e-10)
    assert cert.inequality_margin >= -1e-10
    rep = decomposition_report(rho, d)
    assert rep.ok(1e-8)
    pt = partial_transpose_matrix(d.assemble(), 2, n)
    assert np.linalg.eigvalsh((pt + pt.conj().T) / 2)[0] >= -1e-10


class TestDecompose:
    def test_boundary_state(self, boundary_state):
        d, cert = decompose(boundary_state)
        _check_decomposition(boundary_state, d, cert)
        assert cert.t_star == pytest.approx(0.5, abs=1e-3)
        np.testing.assert_allclose(d.assemble(), BOUNDARY_RHO, atol=1e-8)

    @pytest.mark.parametrize("n", [2, 5])
    def test_maximally_mixed(self, n):
        rho = maximally_mixed(2, n)
        d, cert = decompose(rho)
        assert cert.t_star == 0.0
        _check_decomposition(rho, d, cert)

    def test_random_suite(self, rng):
        for n in (2, 3, 6):
            for lam in sample_spectra(2 * n, 10, rng, condition="pass"):
                rho = random_state_with_spectrum(Spectrum(lam), (2, n), rng)
                _check_decomposition(rho, *decompose(rho))

    def test_refuses_failing_spectrum(self, bell_state):
        with pytest.raises(SpectralConditionError):
            decompose(bell_state)

    def test_override_reports_not_admissible(self, bell_state):
        with pytest.raises(NotAdmissibleError):
            decompose(bell_state, require_condition=False)

    def test_requires_qubit(self):
        with pytest.raises(DimensionError):
            decompose(maximally_mixed(3, 3))


class TestVerify:
    def test_exact_product(self):
        rho = product_state([1, 0], [0, 1, 0])
        d = SeparableDecomposition(
            [ProductTerm(1.0, np.array([1, 0], dtype=complex), np.array([0, 1, 0], dtype=complex))], 0.0
        )
        assert verify_decomposition(rho, d) <= 1e-14

    def test_perturbed_weight(self, boundary_state):
        d, _ = decompose(boundary_state)
        assert verify_decomposition(boundary_state, d) <= 1e-8
        bumped = list(d.terms)
        bumped[0] = ProductTerm(bumped[0].weight + 1e-3, bumped[0].qubit_state, bumped[0].qudit_state)
        rep = decomposition_report(boundary_state, SeparableDecomposition(bumped, 0.0))
        assert rep.distance >= 1e-4
        assert not rep.ok()

    def test_reports_negative_weights_and_norms(self, boundary_state):
        d, _ = decompose(boundary_state)
        bad = [ProductTerm(-t.weight, 2 * t.qubit_state, t.qudit_state) for t in d.terms]
        rep = decomposition_report(boundary_state, SeparableDecomposition(bad, 0.0))
        assert rep.negative_weights == len(d)
        assert rep.max_norm_deviation == pytest.approx(1.0)

    def test_dimension_mismatch(self, boundary_state):
        d = SeparableDecomposition(
            [ProductTerm(1.0, np.array([1, 0], dtype=complex), np.array([1, 0, 0], dtype=complex))], 0.0
        )
        with pytest.raises(DimensionError):
            verify_decomposition(boundary_state, d)


def test_scan_rows(boundary_state):
    rows = scan(boundary_state, 1001)
    assert len(rows) == 1001
    assert rows[500][0] == 0.5
    assert rows[500][1] <= 1e-10
    assert rows[0][1] == pytest.approx(rows[-1][1], abs=1e-12)
    assert all(r[3] <= r[2] <= r[4] for r in rows)
