"""Exception hierarchy shared by all modules."""


class HopfisoError(Exception):
    """Base class for every error raised by the library."""


class StructuralError(HopfisoError):
    """Operands belong to different parents (groups, fields, data)."""


class ConductorMismatchError(StructuralError):
    """A root of unity or scalar does not live in the requested cyclotomic field."""


class InputError(HopfisoError):
    """Caller supplied data violating a documented precondition."""


class DatumError(InputError):
    """A would-be Cartan datum violates the braiding conditions.

    ``violations`` lists ``(i, j, message)`` triples, 1-based.
    """

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class UnsupportedCaseError(InputError):
    """The datum is valid in principle but outside the supported range (even N)."""


class BudgetExceededError(HopfisoError):
    """A bounded computation ran out of its degree or rule budget."""


class InternalConsistencyError(HopfisoError):
    """An identity guaranteed by the theory failed; signals a bug."""
