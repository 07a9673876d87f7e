from privex.helpers import empty


class CantorScanException(Exception):
    """Base exception for custom exceptions part of this app"""
    def __init__(self, message: str, **context):
        super(CantorScanException, self).__init__(message)
        self.message = message
        self.context = context

    def __str__(self):
        f = f"{self.message}"
        details = ', '.join(f"{k}={v}" for k, v in self.context.items() if v is not None)
        if not empty(details): f += f" ({details})"
        return f

    def __repr__(self):
        return f'<{self.__class__.__name__} message="{self.message[0:40]}" context={self.context} />'


class InvalidSpec(CantorScanException):
    """A sequence spec document or one of its parameters is unusable. Mapped to exit code 2."""
    pass


class SpecParseError(InvalidSpec):
    pass


class UnknownFamily(InvalidSpec):
    pass


class ParameterOutOfRange(InvalidSpec):
    pass


class TailRuleMissing(InvalidSpec):
    pass


class ConfigError(InvalidSpec):
    pass


class NumericsError(CantorScanException):
    pass


class DomainError(NumericsError):
    """A certified function was called on an enclosure reaching outside its real domain."""
    def __init__(self, message: str, function: str = None, endpoint=None, **context):
        super(DomainError, self).__init__(message, function=function, endpoint=endpoint, **context)
        self.function = function
        self.endpoint = endpoint


class RepresentationOverflow(NumericsError):
    """A value exists only in its log channel and cannot be expanded. Mapped to exit code 3."""
    pass


class PrecisionFailure(NumericsError):
    """Enclosures grew beyond the configured blow-up bound. Mapped to exit code 3."""
    pass


class IndexOutOfRange(CantorScanException):
    pass


class DegenerateGeometry(CantorScanException):
    pass


class InconsistentBounds(CantorScanException):
    """A certified lower bound exceeds a certified upper bound - an internal soundness failure."""
    pass


class HexagonRealizationError(CantorScanException):
    pass


class InconsistentVerdict(CantorScanException):
    pass
