from .SpeciesConstants import SpeciesConstants
from .CellGeometry import CellGeometry
from .DriveParams import DriveParams
from .DecayRates import DecayRates
from .DetectionModel import DetectionModel
from .QuadratureSpec import QuadratureSpec
from .ThermalState import ThermalState
from .Waveform import Waveform
from .CoincidenceHistogram import CoincidenceHistogram
from .EventStream import EventStream
from .McRates import McRates
from .StrengthPoint import StrengthPoint
from .FitResult import FitResult
from .SweepTable import SweepTable
from .RunConfig import RunConfig

__all__ = [
    "SpeciesConstants",
    "CellGeometry",
    "DriveParams",
    "DecayRates",
    "DetectionModel",
    "QuadratureSpec",
    "ThermalState",
    "Waveform",
    "CoincidenceHistogram",
    "EventStream",
    "McRates",
    "StrengthPoint",
    "FitResult",
    "SweepTable",
    "RunConfig",
]
