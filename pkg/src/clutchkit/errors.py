"""Exception types raised across clutchkit."""


class ClutchkitError(Exception):
    """Base class for all library errors."""


class InversionOfZero(ClutchkitError, ZeroDivisionError):
    pass


class NotPureImaginary(ClutchkitError, ValueError):
    pass


class ConventionMismatch(ClutchkitError, ValueError):
    pass


class SpaceMismatch(ClutchkitError, ValueError):
    pass


class DegenerateHomotopy(ClutchkitError, ArithmeticError):
    pass


class OutOfChart(ClutchkitError, ValueError):
    pass


class MembershipViolation(ClutchkitError, ValueError):
    def __init__(self, message, defect=None):
        super().__init__(message)
        self.defect = defect


class EquivarianceViolation(ClutchkitError, ValueError):
    def __init__(self, message, defect=None):
        super().__init__(message)
        self.defect = defect


class DiagramUnresolved(ClutchkitError, RuntimeError):
    pass


class UsageError(ClutchkitError, ValueError):
    pass


class EvaluationFailure(ClutchkitError, RuntimeError):
    """A map raised while being evaluated on a sample; carries the sample."""

    def __init__(self, message, g=None, p=None):
        super().__init__(message)
        self.g = g
        self.p = p
