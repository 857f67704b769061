"""Exception types shared across the package."""


class LforgeError(Exception):
    """Base class for all computational errors raised by lforge."""


class PoleError(LforgeError):
    """Evaluation requested at a pole of the function."""


class DomainError(LforgeError):
    """Argument outside the documented domain of the operation."""


class InvalidRange(LforgeError):
    """Summation or scan range is empty or reversed."""


class PrecisionExceeded(LforgeError):
    """Requested accuracy cannot be met with the available tables/terms."""


class NonConvergence(LforgeError):
    """A series or continued fraction failed to converge within its budget."""


class StepTooLarge(LforgeError):
    """Nielsen stepping called with |d| >= |w|."""


class AsymptoticFloor(LforgeError):
    """Smallest term of an asymptotic series exceeds the target error."""


class SeriesDivergence(LforgeError):
    """Local-factor log series fails the ratio test at the cutoff prime."""


class ContourTooLow(LforgeError):
    """Riemann-sum contour violates the theorem's constraint on v."""


class StepTooCoarse(LforgeError):
    """Step-halving check moved the result by more than the target error."""


class SupportViolation(LforgeError):
    """Density requested outside the support bound."""


class QuadratureUnderResolved(LforgeError):
    """Nystrom discretization cannot resolve the requested eigenvalues."""


class CoefficientShortfall(LforgeError):
    """Coefficient source cannot supply enough terms for the request."""


class NotSelfDual(LforgeError):
    """Operation requires a self-dual L-function."""


class LostBracket(LforgeError):
    """Sign change disappeared on re-evaluation at higher precision."""


class EvaluationFailure(LforgeError):
    """An underlying evaluation failed during a scan; carries the offending t."""

    def __init__(self, message, t=None):
        super().__init__(message)
        self.t = t


class BadReduction(LforgeError):
    """Prime divides the discriminant; point-count formula does not apply."""
