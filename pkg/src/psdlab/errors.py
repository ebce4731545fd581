"""Exception types shared across the package."""


class PsdlabError(Exception):
    """Base class for all package-specific errors."""


class EvaluationDomainError(PsdlabError):
    """A symbol evaluated to a non-finite matrix."""


class ConditioningError(PsdlabError):
    """A linear solve was requested too close to a singular matrix."""

    def __init__(self, message, where=None):
        super().__init__(message)
        self.where = where


class ContourError(PsdlabError):
    """A contour (circle) passes too close to a zero/eigenvalue."""


class ResolutionError(PsdlabError):
    """A grid is too coarse to resolve the requested construction."""


class BackendUnsupportedError(PsdlabError):
    """The requested quantization backend cannot handle this symbol."""


class BeamConstructionError(PsdlabError):
    """A beam quasimode could not be built at the requested phase point."""


class NumericalError(PsdlabError):
    """A dense linear-algebra kernel failed to converge."""
