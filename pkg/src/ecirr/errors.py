"""Exception hierarchy shared by all ecirr modules.

Every domain error derives from :class:`EcirrError`; the CLI maps these to
exit status 1 and prints the class name.
"""


class EcirrError(Exception):
    pass


class NotPrime(EcirrError, ValueError):
    pass


class ReducibleModulus(EcirrError, ValueError):
    pass


class DegreeMismatch(EcirrError, ValueError):
    pass


class ContextMismatch(EcirrError, ValueError):
    pass


class DivisionByZero(EcirrError, ZeroDivisionError):
    pass


class FieldTooLarge(EcirrError):
    pass


class DegreeZero(EcirrError, ValueError):
    pass


class BothZero(EcirrError, ValueError):
    pass


class SplittingFailed(EcirrError):
    """Equal-degree splitting ran out of random attempts."""


class PointNotOnCurve(EcirrError, ValueError):
    pass


class SingularCurve(EcirrError, ValueError):
    pass


class InvalidMap(EcirrError, ValueError):
    pass


class OrderMismatch(EcirrError, ValueError):
    pass


class NotDivisible(EcirrError, ArithmeticError):
    pass


class DegenerateAlpha(EcirrError, ValueError):
    pass


class NotInOrder(EcirrError, ValueError):
    pass


class IrreducibilityViolation(EcirrError):
    pass


class ExhaustedChoices(EcirrError):
    def __init__(self, msg, history=None):
        super().__init__(msg)
        self.history = history or []


class SubfieldMismatch(EcirrError, ValueError):
    pass


class NodeNotFound(EcirrError, KeyError):
    pass
