"""Exception hierarchy.

DomainError covers expected failures on bad input (exit code 1 in the CLI);
InternalError covers broken invariants that indicate a bug (exit code 2).
"""


class EllfrobError(Exception):
    pass


class DomainError(EllfrobError):
    pass


class InternalError(EllfrobError):
    pass


class NotAUnit(DomainError):
    pass


class NotCongruentOne(DomainError):
    pass


class ModulusMismatch(DomainError):
    pass


class NotIntegrable(DomainError):
    """Antiderivative obstruction at a degree s*p-1 monomial; carries s."""

    def __init__(self, s, msg=None):
        self.s = s
        super().__init__(msg or "coefficient of x^(%d*p-1) is not divisible by p" % s)


class DenominatorNotLocalizer(DomainError):
    pass


class SingularPair(DomainError):
    pass


class NotTangential(DomainError):
    pass


class NotOrdinary(DomainError):
    pass


class SingularSystem(InternalError):
    pass


class WrongResidueClass(DomainError):
    pass


class BNotUnit(DomainError):
    pass


class TOutOfRange(DomainError):
    pass


class NotStabilized(DomainError):
    pass


class SigmaSingular(DomainError):
    pass


class PropertyViolation(InternalError):
    def __init__(self, clause, msg=None):
        self.clause = clause
        super().__init__(msg or "property violated: %s" % clause)


class InternalMismatch(InternalError):
    pass


class TheoremViolation(InternalError):
    pass


class DegreeMismatch(InternalError):
    pass
