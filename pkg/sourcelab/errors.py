from cdiserrors import APIError


class SourceLabError(APIError):
    """
    Base class for every error raised by the laboratory.

    ``code`` is unique per error class and doubles as the exit status of the
    ``sourcelab`` command line tool.
    """

    def __init__(self, message, code=1):
        super(SourceLabError, self).__init__(message)
        self.message = str(message)
        self.code = code

    def __str__(self):
        return self.message


class ConfigInvalid(SourceLabError):
    def __init__(self, message):
        super(ConfigInvalid, self).__init__(message, code=2)


class StageFailure(SourceLabError):
    """
    Raised by the experiment runner when a pipeline stage fails. The original
    error's code is kept in ``original_code``.
    """

    def __init__(self, message, original_code=None):
        super(StageFailure, self).__init__(message, code=3)
        self.original_code = original_code


class SeriesMissing(SourceLabError):
    def __init__(self, message):
        super(SeriesMissing, self).__init__(message, code=4)


class InvalidGrid(SourceLabError):
    def __init__(self, message):
        super(InvalidGrid, self).__init__(message, code=10)


class InvalidModel(SourceLabError):
    def __init__(self, message):
        super(InvalidModel, self).__init__(message, code=11)


class OrderOutOfRange(SourceLabError):
    def __init__(self, message):
        super(OrderOutOfRange, self).__init__(message, code=12)


class SupportViolation(SourceLabError):
    def __init__(self, message):
        super(SupportViolation, self).__init__(message, code=13)


class NotNonnegDefinite(SourceLabError):
    def __init__(self, message):
        super(NotNonnegDefinite, self).__init__(message, code=14)


class LameViolation(SourceLabError):
    def __init__(self, message):
        super(LameViolation, self).__init__(message, code=15)


class DimensionMismatch(SourceLabError):
    def __init__(self, message):
        super(DimensionMismatch, self).__init__(message, code=16)


class UnvalidatedSpec(SourceLabError):
    def __init__(self, message):
        super(UnvalidatedSpec, self).__init__(message, code=17)


class SmoothnessTooLow(SourceLabError):
    def __init__(self, message):
        super(SmoothnessTooLow, self).__init__(message, code=18)


class EnsembleTooSmall(SourceLabError):
    def __init__(self, message):
        super(EnsembleTooSmall, self).__init__(message, code=30)


class EmptyInput(SourceLabError):
    def __init__(self, message):
        super(EmptyInput, self).__init__(message, code=31)
