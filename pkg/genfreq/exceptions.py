from typing import Optional


class GenFreqError(ValueError):
    """Base class for every error raised by the frequency toolkit"""


class DimensionMismatchError(GenFreqError):
    def __init__(self, left: int, right: int):
        super().__init__(f"dimension mismatch: {left} != {right}")
        self.left = left
        self.right = right


class DegenerateCurveError(GenFreqError):
    """Zero arc speed / zero signal magnitude: direction and frequency are undefined"""


class NonOrthogonalError(GenFreqError):
    pass


class ParameterError(GenFreqError):
    pass


class TimeBaseError(GenFreqError):
    pass


class DataFormatError(GenFreqError):
    def __init__(self, message: str, line: Optional[int] = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
