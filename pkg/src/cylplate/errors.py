"""Exception types shared across the package."""


class CasimirError(Exception):
    """Base class for errors raised by cylplate."""


class DomainError(CasimirError, ValueError):
    """An argument lies outside the domain of a function."""


class PoleError(DomainError):
    """A function was evaluated at one of its poles."""


class QuadratureError(CasimirError):
    """Adaptive quadrature did not reach the requested tolerance."""

    def __init__(self, message, value=None, error=None):
        super().__init__(message)
        self.value = value
        self.error = error


class ConvergenceError(CasimirError):
    """A truncated determinant or series failed its validity checks."""


class DivergentExpansionError(CasimirError):
    """The requested asymptotic coefficient is a divergent sum."""
