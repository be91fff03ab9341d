import numpy as np
import pytest

from sepspec.states import BipartiteDensityMatrix

BOUNDARY_RHO = np.array(
    [
        [1, 0, 0, 0],
        [0, 3, 2, 0],
        [0, 2, 3, 0],
        [0, 0, 0, 4],
    ]
) / 11

# (H (x) I)^dagger rho (H (x) I) as displayed, entries over 22
BOUNDARY_RHO_HADAMARD = np.array(
    [
        [4, 2, -2, 2],
        [2, 7, -2, -1],
        [-2, -2, 4, -2],
        [2, -1, -2, 7],
    ]
) / 22

HADAMARD = np.array([[1, 1], [1, -1]]) / np.sqrt(2)


@pytest.fixture
def boundary_state():
    return BipartiteDensityMatrix(BOUNDARY_RHO, 2, 2)


@pytest.fixture
def hadamard_state():
    return BipartiteDensityMatrix(BOUNDARY_RHO_HADAMARD, 2, 2)


@pytest.fixture
def bell_state():
    psi = np.array([1, 0, 0, 1]) / np.sqrt(2)
    return BipartiteDensityMatrix(np.outer(psi, psi), 2, 2)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def random_hermitian(dim, rng):
    x = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (x + x.conj().T) / 2


def random_state(dims, rng):
    """Full-rank Ginibre density matrix."""
    size = dims[0] * dims[1]
    g = rng.standard_normal((size, size)) + 1j * rng.standard_normal((size, size))
    rho = g @ g.conj().T
    return BipartiteDensityMatrix(rho / np.trace(rho).real, *dims)
