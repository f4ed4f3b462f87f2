"""Exception hierarchy shared by all rdxgauss modules."""


class RdxGaussError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(RdxGaussError):
    """Operands have incompatible shapes."""


class SingularBlock(RdxGaussError):
    """A covariance block that must be invertible is (numerically) singular."""


class NotPositiveDefinite(RdxGaussError):
    """A matrix required to be symmetric positive definite is not."""


class IllConditioned(RdxGaussError):
    """A matrix is too badly conditioned for the requested computation."""


class InfeasibleDistortion(RdxGaussError):
    """The distortion target violates the remote-coding floor (D must
    strictly dominate the conditional error covariance given both signals)."""


class DegenerateObservation(RdxGaussError):
    """The encoder observation carries no information about the source in
    some direction, so the conditional-gap matrix is singular."""


class RegimeViolation(RdxGaussError):
    """Inputs fall outside the validity window of a closed-form expression."""


class StructureViolation(RdxGaussError):
    """A required structural property (e.g. commuting covariances from a
    white-noise observation model) does not hold."""


class NumericalFailure(RdxGaussError):
    """An iterative solver failed to bracket or converge."""
