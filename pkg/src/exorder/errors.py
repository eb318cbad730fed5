"""Exception types shared across the package."""


class ExorderError(Exception):
    """Base class for all package-specific errors."""


class DomainError(ExorderError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class MomentError(ExorderError, ValueError):
    """A required moment (mean, variance, ...) of the distribution is infinite.

    Raised instead of silently returning NaN so that callers can map the
    condition to a clean diagnostic (the CLI turns it into exit code 2).
    """


class SingularityError(ExorderError, ArithmeticError):
    """A formula hits a singular point, e.g. zero density at a quantile."""


class ConvergenceError(ExorderError, RuntimeError):
    """An iterative solver did not converge; carries diagnostics."""

    def __init__(self, message, *, iterations=None, last_value=None, residual=None):
        detail = []
        if iterations is not None:
            detail.append(f"iterations={iterations}")
        if last_value is not None:
            detail.append(f"last_value={last_value!r}")
        if residual is not None:
            detail.append(f"residual={residual!r}")
        if detail:
            message = f"{message} ({', '.join(detail)})"
        super().__init__(message)
        self.iterations = iterations
        self.last_value = last_value
        self.residual = residual
