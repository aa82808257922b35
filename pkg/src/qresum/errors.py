"""Exception hierarchy shared by every module."""


class QResumError(Exception):
    """Base class for all library errors."""


class OutOfRange(QResumError, ValueError):
    pass


class TruncationFailure(QResumError, ArithmeticError):
    pass


class DivergentSeries(QResumError, ArithmeticError):
    pass


class PoleAtParameter(QResumError, ZeroDivisionError):
    pass


class PoleAtLattice(PoleAtParameter):
    pass


class PoleOnRay(PoleAtParameter):
    pass


class ConstraintViolation(QResumError, ValueError):
    pass


class BadAbscissa(ConstraintViolation):
    pass


class InvalidN(ConstraintViolation):
    pass


class GrowthViolation(ConstraintViolation):
    pass


class NoConvergence(QResumError, ArithmeticError):
    """Raised by the quadrature engines; ``diagnostics`` keeps the last iterates."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class UnknownSuite(QResumError, KeyError):
    pass
