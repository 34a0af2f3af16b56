"""Exception types raised across the package."""


class LegkitError(Exception):
    """Base class for all library errors."""


class DomainError(LegkitError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class InvalidIntervalError(DomainError):
    """An interval [a, b] was given with b <= a."""


class ConvergenceError(LegkitError, RuntimeError):
    """An iterative solver exhausted its budget."""


class ConsistencyError(LegkitError, RuntimeError):
    """Two independent computations of the same quantity disagree."""


class OrderTooLowError(LegkitError, ValueError):
    """A smooth function does not provide enough derivatives."""


class FunctionEvaluationError(LegkitError):
    """An integrand failed to evaluate at a quadrature node."""

    def __init__(self, index, point, cause):
        self.index = index
        self.point = point
        self.cause = cause
        super().__init__(f"evaluation failed at node {index} (x={point!r}): {cause}")


class InputFileError(LegkitError):
    """A sample file could not be read or parsed."""


class HypothesisWarning(UserWarning):
    """Boundary terms of an integration-by-parts identity do not vanish."""
