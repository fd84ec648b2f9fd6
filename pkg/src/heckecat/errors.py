"""Exception types raised across the package."""


class HeckeCatError(Exception):
    """Base class for all package errors."""


class UnsupportedType(HeckeCatError, ValueError):
    pass


class GroupTooLarge(HeckeCatError):
    pass


class BadGeneratorIndex(HeckeCatError, ValueError):
    pass


class BadElement(HeckeCatError, ValueError):
    pass


class CoefficientOverflow(HeckeCatError, OverflowError):
    pass


class NegativeQExponent(HeckeCatError, ValueError):
    pass


class GroupMismatch(HeckeCatError, ValueError):
    pass


class TriangularityViolation(HeckeCatError):
    pass


class Inconsistency(HeckeCatError):
    """Two independent routes to the same quantity disagree."""


class MissingCache(HeckeCatError):
    pass


class WrongBasis(HeckeCatError, ValueError):
    pass


class SFinite(HeckeCatError, ValueError):
    """T_s annihilates L(x) when sx > x."""


class NotRightDescent(HeckeCatError, ValueError):
    """C_s annihilates L(x) unless xs < x."""


class NotAscent(HeckeCatError, ValueError):
    pass


class NegativeInputCoefficient(HeckeCatError, ValueError):
    pass


class UngradedNegativity(HeckeCatError):
    pass


class NoSolution(HeckeCatError):
    pass


class TooLong(HeckeCatError, ValueError):
    pass


class CacheFormatError(HeckeCatError):
    pass


class ParseError(HeckeCatError, ValueError):
    pass
