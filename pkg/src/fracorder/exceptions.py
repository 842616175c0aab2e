"""Exception hierarchy shared across the package."""


class FracorderError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(FracorderError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class NonDifferentiableError(DomainError):
    """The classical derivative was requested at a breakpoint."""


class NumericalError(FracorderError, RuntimeError):
    """A numerical procedure failed to produce a trustworthy result."""


class SeriesConvergenceError(NumericalError):
    """A series evaluation did not terminate within its term budget."""


class BracketingError(NumericalError):
    """A root could not be bracketed, or the bracket was ambiguous."""


class BudgetExceededError(NumericalError):
    """Adaptive integration exceeded its evaluation budget."""


class IntegrationError(NumericalError):
    """A quadrature produced non-finite values or an invalid kernel."""


class DegenerateFitError(NumericalError):
    """Error data does not admit a meaningful power-law fit."""
