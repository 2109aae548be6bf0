"""Exception hierarchy.

Every domain failure derives from :class:`DomainError`; the CLI maps these to
exit code 2 and reports the class name as the error variant.
"""


class DomainError(Exception):
    """Base class for mathematical/precision failures."""

    @property
    def variant(self) -> str:
        return type(self).__name__


class DivisionByZero(DomainError, ZeroDivisionError):
    pass


class PrecisionLoss(DomainError):
    """A coefficient outside the certified window was required."""


class UndeterminedValuation(DomainError):
    """The known window cannot certify a leading term."""


class EmptyWindow(DomainError):
    pass


class NotAPthPower(DomainError):
    def __init__(self, witness, message=None):
        self.witness = witness
        super().__init__(message or f"not a p-th power: witness exponent {witness}")


class NotClosed(DomainError):
    """Cartier operator applied to a 1-form that is not closed."""


class LengthMismatch(DomainError):
    pass


class TwistViolation(DomainError):
    pass


class FactorizationBudgetExceeded(DomainError):
    pass
