"""Exception hierarchy. Every error the library raises derives from LSKError."""


class LSKError(Exception):
    """Base class for library errors."""


class InvalidInput(LSKError, ValueError):
    """Malformed polynomial text, JSON or table."""


class NonIntegralExponents(LSKError, ValueError):
    pass


class NotSymmetric(LSKError, ValueError):
    pass


class TailNotRecognized(LSKError, ArithmeticError):
    pass


class InvalidTorusParameters(LSKError, ValueError):
    pass


class NotLSpaceConsistent(LSKError):
    """No sign / table yields an H-function satisfying the axioms."""


class AmbiguousSign(LSKError):
    pass


class NonZeroLinking(LSKError, ValueError):
    pass


class InvalidHTable(LSKError, ValueError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class TrivialLink(LSKError):
    pass


class ComponentNotUnknot(LSKError):
    pass


class ZeroFraming(LSKError, ValueError):
    pass


class InvalidSpinc(LSKError, ValueError):
    pass


class TruncationTooSmall(LSKError):
    pass


class TorsionUnknown(LSKError):
    pass


class LabelMismatch(LSKError, ValueError):
    pass
