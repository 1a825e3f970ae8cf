"""Exception types shared across the package."""


class DomainError(ValueError):
    """Raised when an argument lies outside the mathematical domain of an
    operation (non-positive gamma argument, divergent weight exponent,
    parameters violating a theorem's hypotheses, ...)."""


class ConvergenceError(RuntimeError):
    """Raised when an iterative routine fails to meet its tolerance.

    Carries the best available result so callers can inspect it.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result
