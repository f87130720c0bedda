"""Exception and warning classes raised by pronyiir."""


class PronyError(Exception):
    """Base class for all pronyiir errors."""


class InvalidInputError(PronyError, ValueError):
    """Malformed arguments: wrong shapes, empty vectors, bad parameters."""


class InvalidOrderError(InvalidInputError):
    """Requested orders are incompatible with the number of samples."""


class InvalidSpecError(InvalidInputError):
    """A frequency specification violates its declared symmetry."""


class SingularMatrixError(PronyError):
    """A triangular system has a zero on its diagonal."""


class NoSolutionError(PronyError):
    """The interpolation equations have no solution at the requested order.

    Carries the numerical rank and condition estimate of the denominator
    system so the caller can decide between a different order and the
    least-squares mode.
    """

    def __init__(self, message, rank=None, condition_estimate=None):
        super().__init__(message)
        self.rank = rank
        self.condition_estimate = condition_estimate


class EvaluationError(PronyError):
    """A frequency response was requested at a pole on the unit circle."""


class DegenerateModeError(PronyError):
    """Identification produced a zero root (a mode with no memory)."""


class RankDeficiencyWarning(UserWarning):
    """A least-squares system was rank deficient; minimum-norm answer used."""


class MultiplicityWarning(UserWarning):
    """Two identified roots coincide; the simple-exponential model is suspect."""


class StabilityWarning(UserWarning):
    """The designed filter has a pole on or outside the unit circle."""
