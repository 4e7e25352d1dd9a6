"""Exception hierarchy. The CLI maps these onto process exit codes."""


class GapcurveError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class ValidationError(GapcurveError):
    """Malformed input: bad shapes, mismatched ambients, bad parameters."""

    exit_code = 2


class AmbientMismatchError(ValidationError):
    """Operands live in different series rings (field, branches, truncation)."""


class MissingUnitError(ValidationError):
    """Algebra closure requested for a subspace containing no unit of S."""


class HypothesisViolationError(GapcurveError):
    """A stated hypothesis of the projection pipeline fails for the input."""

    exit_code = 3


class IndeterminateOverFieldError(GapcurveError):
    """The answer depends on points not defined over the base field."""

    exit_code = 4


class IrrationalRamificationError(IndeterminateOverFieldError):
    """Ramification points exist over an extension of the base field."""


class NotStabilizedError(GapcurveError):
    """Truncation order too small for the requested invariant."""

    exit_code = 5


class StabilizationCapError(NotStabilizedError):
    """Truncation escalation hit its cap without stabilizing."""


class ClassificationError(GapcurveError):
    """Gap function outside the classified range, or no table row matches."""

    exit_code = 2
