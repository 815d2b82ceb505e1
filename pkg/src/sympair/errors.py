"""Exception hierarchy shared by all modules."""


class SymPairError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(SymPairError, ValueError):
    """A user-supplied parameter violates a documented constraint."""


class NotPrime(ParameterError):
    pass


class TooLarge(ParameterError):
    pass


class FieldMismatch(SymPairError, TypeError):
    """Operands belong to different fields."""


class DivisionByZero(SymPairError, ZeroDivisionError):
    pass


class ZeroLeading(ParameterError):
    pass


class DegreeTooSmall(ParameterError):
    pass


class DegreeTooHigh(ParameterError):
    pass


class LengthMismatch(ParameterError):
    pass


class ZeroVector(ParameterError):
    pass


class BadDimension(ParameterError):
    pass


class BadM(ParameterError):
    pass


class BadPoints(ParameterError):
    pass


class BadDp(ParameterError):
    pass


class BadParams(ParameterError):
    pass
