from sourcelab.errors import SourceLabError


class ReconstructionError(SourceLabError):
    pass


class FrequencyTooHigh(ReconstructionError):
    def __init__(self, message):
        super(FrequencyTooHigh, self).__init__(message, code=40)


class ThetaSingular(ReconstructionError):
    def __init__(self, message):
        super(ThetaSingular, self).__init__(message, code=41)


class NonHermitianInput(ReconstructionError):
    def __init__(self, message):
        super(NonHermitianInput, self).__init__(message, code=42)
