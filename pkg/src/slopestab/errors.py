"""Exception hierarchy shared by the library and the CLI."""


class SlopeStabError(Exception):
    """Base class; the CLI reports ``type(exc).__name__`` as the error code."""


class DivisionByZero(SlopeStabError, ZeroDivisionError):
    pass


class RationalFormatError(SlopeStabError, ValueError):
    pass


class LatticeMismatch(SlopeStabError, ValueError):
    pass


class NotInSymmetricPlane(SlopeStabError, ValueError):
    pass


class InvalidSurfaceData(SlopeStabError, ValueError):
    pass


class DegenerateSlope(SlopeStabError, ArithmeticError):
    pass


class InvalidInterval(SlopeStabError, ValueError):
    pass


class KouvidakisHypothesisFailed(SlopeStabError, ValueError):
    pass


class InvalidGenus(SlopeStabError, ValueError):
    pass


class HypothesisNotSatisfied(SlopeStabError, ValueError):
    pass


class NotAmplePolarization(SlopeStabError, ValueError):
    pass


class SearchExhausted(SlopeStabError, RuntimeError):
    pass


class UnboundedAbove(SlopeStabError, RuntimeError):
    pass


class NoCorrectionFound(SlopeStabError, RuntimeError):
    pass


class SchemaViolation(SlopeStabError, ValueError):
    pass
