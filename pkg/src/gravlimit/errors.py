"""Exception types shared across the package."""


class GravLimitError(Exception):
    """Base class for all package errors."""


class DomainError(GravLimitError, ValueError):
    """An argument lies outside the domain of the operation."""


class ConfigError(GravLimitError, ValueError):
    """Inconsistent or unresolvable configuration."""


class NumericalError(GravLimitError, ArithmeticError):
    """A numerical procedure failed to reach the requested accuracy.

    ``estimate`` and ``error`` carry the best value obtained so far.
    """

    def __init__(self, message, estimate=None, error=None, **diagnostics):
        super().__init__(message)
        self.estimate = estimate
        self.error = error
        self.diagnostics = diagnostics

    def as_dict(self):
        out = {"error": str(self), "estimate": self.estimate, "error_estimate": self.error}
        out.update(self.diagnostics)
        return out
