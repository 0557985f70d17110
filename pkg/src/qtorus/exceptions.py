class QTorusError(ValueError):
    """
    Base class for errors raised by qtorus.

    """


class ParseError(QTorusError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class PresentationError(QTorusError):
    pass


class DimensionMismatch(QTorusError):
    pass


class AlgebraMismatch(QTorusError):
    pass


class UnsupportedScalarGroup(QTorusError):
    pass


class DegenerateForm(QTorusError):
    pass


class InvalidWitness(QTorusError):
    pass


class PreconditionFailed(QTorusError):
    def __init__(self, reason, message=None):
        self.reason = reason
        super().__init__(message or reason)


class NonUnitLeadingCoefficient(QTorusError):
    pass


class NotExact(QTorusError):
    pass
