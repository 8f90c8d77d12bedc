"""Exception hierarchy shared by every module of the package."""


class CoherenceError(Exception):
    """Base class for all errors raised by ``cohorder``."""


class DomainError(CoherenceError, ValueError):
    """An input lies outside the mathematical domain of an operation."""


class NotHermitian(DomainError):
    pass


class BadTrace(DomainError):
    pass


class NotPositive(DomainError):
    pass


class NormalizationError(DomainError):
    pass


class DegenerateLift(DomainError):
    pass


class NotIncoherent(DomainError):
    pass


class DimensionError(DomainError):
    pass


class DimensionMismatch(DimensionError):
    pass


class UnsupportedInput(DomainError):
    """The requested measure has no implemented evaluation for this input."""


class InvalidChannel(DomainError):
    pass


class NoConvergence(CoherenceError, ArithmeticError):
    pass


class StateFileError(CoherenceError):
    """A state or scan file could not be read or does not follow the grammar."""
