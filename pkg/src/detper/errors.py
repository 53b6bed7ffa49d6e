"""Exception types raised across the package."""


class DetperError(Exception):
    """Base class for every error raised by this package."""


class NonUnit(DetperError, ArithmeticError):
    pass


class DivisionByZero(DetperError, ZeroDivisionError):
    pass


class NotIrreducible(DetperError, ValueError):
    pass


class NotNormOne(DetperError, ValueError):
    pass


class BudgetExceeded(DetperError, RuntimeError):
    pass


class FactorizationBudgetExceeded(BudgetExceeded):
    pass


class BadCongruenceClass(DetperError, ValueError):
    pass


class PrecisionExhausted(DetperError, ArithmeticError):
    pass


class OddDimension(DetperError, ValueError):
    pass


class NodesCollide(DetperError, ValueError):
    pass


class DegreeOverflow(DetperError, ValueError):
    pass


class NotInBaseField(DetperError, ArithmeticError):
    """A value expected in F_p came out with a nonzero extension part.

    This always indicates a bug, never a mathematical case.
    """


class DegenerateDiscriminant(DetperError, ValueError):
    pass


class Reducible(DetperError, ValueError):
    pass


class UnknownCheckId(DetperError, KeyError):
    pass
