"""Exception and warning types shared across the package."""


class RevivalError(Exception):
    """Base class for all errors raised by revival_lab."""


class DomainError(RevivalError, ValueError):
    """A quantum number or position lies outside the model's domain."""


class DegenerateSpectrumError(RevivalError, ValueError):
    """The spectrum has a vanishing first derivative, so no classical period exists."""


class InconsistencyError(RevivalError, ValueError):
    """Caller-supplied quantities contradict each other (e.g. a wrong commensurability ratio)."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class TruncationWarning(UserWarning):
    """A packet's finite support drops more weight than the tail threshold allows."""

    def __init__(self, message, tail_mass):
        super().__init__(message)
        self.tail_mass = tail_mass
