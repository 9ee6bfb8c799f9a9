"""Exception hierarchy shared by all delaymargin modules."""


class DelayMarginError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 3
    kind = "error"


class InvalidInputError(DelayMarginError, ValueError):
    exit_code = 2
    kind = "invalid-input"


class ImaginaryAxisSingularityError(InvalidInputError):
    """A pole or zero lies on (or numerically at) the imaginary axis."""

    kind = "imaginary-axis-singularity"


class MultiplicityUnsupportedError(InvalidInputError):
    """Two interpolation nodes coincide; repeated nodes are not supported."""

    kind = "multiplicity-unsupported"


class ShiftDomainError(InvalidInputError):
    kind = "shift-domain"


class DomainError(InvalidInputError):
    kind = "domain"


class StablePlantSignal(DelayMarginError):
    """Raised when a transfer function has no unstable pole.

    Not a failure: the maximum delay margin of a stable plant is infinite.
    """

    exit_code = 0
    kind = "stable-plant"


class NumericError(DelayMarginError):
    kind = "numeric"


class AccuracyNotReachedError(NumericError):
    """Quadrature self-check failed; carries both estimates."""

    kind = "accuracy-not-reached"

    def __init__(self, message, coarse, fine):
        super().__init__(message)
        self.coarse = coarse
        self.fine = fine
