"""Exception hierarchy.

Input errors subclass ``ValueError``; infeasibility of a requested
configuration subclasses :class:`InfeasibleError` so callers (and the CLI)
can tell the two apart.
"""


class EstimationError(Exception):
    """Base class for every error raised by this package."""


class InputError(EstimationError, ValueError):
    """An argument is outside the domain of the model."""


class AboveThresholdError(InputError):
    """Physical error rate at or above the 1% surface-code threshold."""


class InfeasibleError(EstimationError):
    """The model is fine but the request cannot be satisfied."""


class CalibrationInfeasible(InfeasibleError):
    """No distance (or distance pair) in the scanned range meets the budget."""


class UnitCountOutOfRange(InfeasibleError):
    pass


class FactoryCountOutOfRange(InfeasibleError):
    pass


class TargetUnreachable(InfeasibleError):
    """Even the reaction-limited configuration misses the target runtime."""


class BudgetTooSmall(InfeasibleError):
    """The smallest configuration already exceeds the qubit budget."""


class FixedPointDivergence(EstimationError):
    """Distance/cycle-count iteration failed to settle."""
