"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ConfigError(ValueError):
    """A run configuration is inconsistent or incomplete."""


class SingularEvaluationError(ArithmeticError):
    """An unregularized kernel was evaluated at a coincident point pair."""


class StepRejectedError(RuntimeError):
    """A time step failed the CFL safety check.

    Attributes:
        admissible_dt: largest step allowed by the check at rejection time.
    """

    def __init__(self, message, admissible_dt):
        super().__init__(message)
        self.admissible_dt = admissible_dt


class QuadratureError(RuntimeError):
    """An adaptive quadrature failed to converge within its budget."""
