"""Exception hierarchy shared across the package."""


class SepSpecError(Exception):
    """Base class for all package errors."""


class DimensionError(SepSpecError, ValueError):
    """Input shapes or local dimensions are incompatible."""


class ValidationError(SepSpecError, ValueError):
    """An input fails a numerical precondition (Hermitian, unitary, unit norm...)."""


class NotAStateError(ValidationError):
    """A matrix is not a density matrix. The message names the violated invariant."""


class SpectralConditionError(SepSpecError):
    """The spectrum violates the qubit-qudit absolute separability condition."""


class NotAdmissibleError(SepSpecError):
    """No rotation of the qubit factor was found at which the block inequality holds.

    :param min_gap: smallest block gap value observed during the search.
    """

    def __init__(self, message: str, min_gap: float):
        super().__init__(message)
        self.min_gap = min_gap


class BlockInequalityError(SepSpecError):
    """``||B||^2 > lambda_min(A) * lambda_min(C)`` beyond tolerance."""


class AlignmentInfeasibleError(SepSpecError):
    """Overlap magnitudes differ, so no aligning unitary exists."""


class ContractionViolationError(SepSpecError):
    """A matrix passed as a contraction has operator norm above one."""


class UnsupportedDimensionError(DimensionError):
    """The requested test is not valid in these local dimensions."""


class SamplingBudgetError(SepSpecError):
    """Rejection sampling hit its rejection limit without producing a sample."""
