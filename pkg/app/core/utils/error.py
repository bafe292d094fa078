class CoreError(Exception):
    """Base exception for core computation errors."""

    message = "Computation failed"
    exit_code = 3

    def __init__(self, detail: str = "") -> None:
        self.detail = detail
        super().__init__(f"{self.message}: {detail}" if detail else self.message)


# Requests that cannot be answered as asked (exit code 2)


class UsageError(CoreError):
    message = "Invalid request"
    exit_code = 2


class ParameterOutOfRangeError(UsageError):
    message = "Parameter out of range"


class BudgetExceededError(UsageError):
    message = "Parameter exceeds configured budget"


class UnknownSubspaceError(UsageError):
    message = "Unknown subspace"


class BackendMismatchError(UsageError):
    message = "Operation not available for this backend"


class PreconditionError(UsageError):
    message = "Precondition violated"


class NoEulerProportionalityError(UsageError):
    message = "No Euler-characteristic proportionality"


# Exact scalars


class ScalarError(CoreError):
    message = "Scalar arithmetic failed"


class ScalarDivisionByZeroError(ScalarError):
    message = "Division by zero"


class ScalarParseError(ScalarError):
    message = "Cannot parse scalar"


class NonHalfIntegerExponentError(ScalarError):
    message = "Prime exponent is not a half-integer"


# Exterior forms


class FormError(CoreError):
    message = "Form operation failed"


class AmbientMismatchError(FormError):
    message = "Forms live on different ambient spaces"


class DegreeError(FormError):
    message = "Degree mismatch"


class IncommensurablePrefactorError(FormError):
    message = "Prefactors differ by an irrational factor"


class NotProportionalError(FormError):
    message = "Forms are not proportional"


class IncompleteStructureError(FormError):
    message = "Structure constants are incomplete"


# Internal consistency failures (exit code 3)


class InternalConsistencyError(CoreError):
    message = "Internal consistency check failed"


class CurvatureConsistencyError(InternalConsistencyError):
    message = "Curvature does not match the projected differential"


class KillingMismatchError(InternalConsistencyError):
    message = "Killing form does not match its trace formula"


class NotInSpanError(InternalConsistencyError):
    message = "Matrix is not in the span of the basis"


class SplitError(InternalConsistencyError):
    message = "Top form does not factor through the split basis"


class FamilyConstructionError(InternalConsistencyError):
    message = "Family construction is inconsistent"


class ValidationFailedError(InternalConsistencyError):
    """Raised when a built algebra violates a Lie algebra axiom."""

    message = "Lie algebra validation failed"
