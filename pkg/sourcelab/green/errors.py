from sourcelab.errors import SourceLabError


class KernelError(SourceLabError):
    pass


class DomainError(KernelError):
    def __init__(self, message):
        super(DomainError, self).__init__(message, code=20)


class CoincidentPoints(KernelError):
    def __init__(self, message):
        super(CoincidentPoints, self).__init__(message, code=21)


class TargetInsideSupport(KernelError):
    def __init__(self, message):
        super(TargetInsideSupport, self).__init__(message, code=22)
