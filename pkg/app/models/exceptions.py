"""Exceptions raised by the simulation and analysis code.

Every class carries the process exit code the CLI reports for it.
"""
from typing import Optional


class VaporPairError(Exception):
    """Base class for all expected failures"""

    exit_code: int = 1

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class ConfigIOError(VaporPairError):
    exit_code = 2


class ConfigSyntaxError(VaporPairError):
    exit_code = 3


class ConfigValidationError(VaporPairError, ValueError):
    exit_code = 4


class CalibrationError(ConfigValidationError):
    """Optical depth requested without a calibrated cross-section"""


class NumericError(VaporPairError, ArithmeticError):
    exit_code = 5


class RangeError(NumericError, ValueError):
    pass


class DomainError(NumericError, ValueError):
    pass


class ResolutionError(NumericError, ValueError):
    pass


class DegenerateInputError(NumericError, ValueError):
    pass


class InsufficientStatisticsError(NumericError):
    pass


class RegressionCheckError(NumericError):
    pass


class QuadratureConvergenceError(NumericError):
    """Node doubling changed the waveform by more than the tolerance"""

    def __init__(self, detail: str, coarse, refined, max_relative_change: float):
        super().__init__(detail)
        self.coarse = coarse
        self.refined = refined
        self.max_relative_change = max_relative_change


class ExtractionError(NumericError):
    """A half-maximum crossing is missing on one side of the peak"""

    def __init__(self, detail: str, side: Optional[str] = None):
        super().__init__(detail)
        self.side = side
