"""Exception hierarchy shared by every haarvol module."""


class HaarvolError(Exception):
    """Base class for all errors raised by haarvol."""


class DomainError(HaarvolError, ValueError):
    """An argument lies outside the domain where a formula is defined."""


class DimensionError(DomainError):
    """A matrix has the wrong shape for the requested operation."""


class UsageError(HaarvolError, ValueError):
    """An unsupported option or combination of options was requested."""


class ConvergenceError(HaarvolError, RuntimeError):
    """An iterative routine stopped before reaching its tolerance.

    Attributes
    ----------
    partial_value : float or None
        Best value available when the iteration stopped.
    error_bound : float or None
        Estimated error of ``partial_value``.
    """

    def __init__(self, message, partial_value=None, error_bound=None):
        super().__init__(message)
        self.partial_value = partial_value
        self.error_bound = error_bound
