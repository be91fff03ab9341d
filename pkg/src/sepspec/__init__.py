"""Separability from spectrum for qubit-qudit (2 x n) states.

A spectrum ``l_1 >= ... >= l_2n`` is separable from spectrum iff
``l_1 <= l_{2n-1} + 2 sqrt(l_{2n-2} l_{2n})``; for such states
:func:`decompose` returns an explicit convex combination of product states.
"""

from sepspec.criteria import (
    CriterionReport,
    WitnessResult,
    abs_sep_condition,
    exact_separability_small,
    gurvits_barnum_ball,
    npt_witness_search,
    orbit_ppt_sample,
    ppt_inequality_probe,
    recheck_witness,
    sample_spectra,
    three_qubit_all_cuts,
)
from sepspec.decomposer import (
    AlignmentVectors,
    DecompositionCertificate,
    FSample,
    ProductTerm,
    RotationParameter,
    SeparableDecomposition,
    alignment_vectors,
    block_gap,
    block_gap_curve,
    construct_aligning_unitary,
    contraction_to_unitaries,
    decompose,
    decompose_blocks,
    evaluate_f_bracket,
    find_admissible_rotation,
    rotation_family,
    unitary_core_to_products,
    verify_decomposition,
)
from sepspec.linalg import (
    hermitian_eigendecompose,
    is_positive_semidefinite,
    kron,
    operator_norm,
    random_haar_unitary,
    singular_value_decompose,
)
from sepspec.states import (
    BipartiteDensityMatrix,
    BlockForm,
    Spectrum,
    conjugate_global,
    conjugate_local,
    from_blocks,
    is_ppt,
    partial_transpose,
    random_state_with_spectrum,
    spectrum_of,
    to_blocks,
)

__version__ = "0.1.0"
