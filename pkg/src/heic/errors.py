"""Exception hierarchy shared across the package.

Validation failures (bad arguments, malformed files, contract violations)
raise :class:`ValidationError`; numeric failures that occur on valid input
(quadrature that will not converge, an eigensolver that does not converge)
raise :class:`NumericError` subclasses.  The CLI maps the former to exit
code 1 and the latter to exit code 2.
"""


class HeicError(Exception):
    """Base class for all package errors."""


class ValidationError(HeicError, ValueError):
    """Input violates a documented precondition."""


class NumericError(HeicError):
    """A numeric procedure failed on otherwise valid input."""


class QuadratureError(NumericError):
    """Adaptive quadrature exceeded its panel budget.

    Carries the best available estimate so callers can inspect how far the
    integration got before giving up.
    """

    def __init__(self, message, best_estimate, error_estimate):
        super().__init__(message)
        self.best_estimate = float(best_estimate)
        self.error_estimate = float(error_estimate)


class EigenSolverError(NumericError):
    """The dense symmetric eigensolver did not converge."""
