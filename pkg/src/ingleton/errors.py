"""Exception types shared across the package."""


class IngletonError(Exception):
    """Base class for all package errors."""


class OrderCapExceeded(IngletonError):
    """Group closure or subgroup enumeration passed a configured cap."""


class InvalidGenerator(IngletonError):
    """A permutation image array is not a bijection, or a matrix is singular."""


class NotNormal(IngletonError):
    """A quotient was requested by a subgroup that is not normal."""


class ParentMismatch(IngletonError):
    """Two subgroups from different groups were combined."""


class NotPrimePower(IngletonError):
    """Field construction requested for a size that is not a prime power."""


class FieldTooSmall(IngletonError):
    """The matrix family is undefined (q=2) or degenerate (q=3) at this field size."""


class VerificationFailed(IngletonError):
    """A structural verification clause failed; the message names the clause."""


class UnknownName(IngletonError):
    """construct_named was called with an unregistered constructor name."""


class BadParams(IngletonError):
    """Constructor parameters are malformed for the requested family."""


class PreconditionFailed(IngletonError):
    """An operation's stated precondition does not hold for these arguments."""


class TimeBudgetExceeded(IngletonError):
    """A search ran out of wall-clock budget.

    Carries the classes found so far in ``partial`` so callers can emit
    flagged partial results instead of silently truncating.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial if partial is not None else []
