from typing import Dict, List, Optional

from pydantic import BaseModel, Field


class WaveformSummary(BaseModel):
    temperature_C: float
    fwhm_ns: float = Field(gt=0)
    fwhm_pre_jitter_ns: float = Field(gt=0)
    strength: float = Field(ge=1)
    r_sr_over_lambda: float = Field(gt=0)
    od: Optional[float] = None
    atom_count: float = Field(ge=0)
    regime: str


class Table1Row(BaseModel):
    temperature_C: float
    od_measured: float
    od_computed: float
    od_pass: bool
    r_sr_over_lambda_measured: float
    r_sr_over_lambda_uncertainty: float
    r_sr_over_lambda_computed: float
    r_sr_pass: bool
    regime: str


class SweepSummary(BaseModel):
    rows: int = Field(ge=0)
    failures: List[Dict[str, object]]
    fwhm_reduction_superradiant: Optional[float] = None
    fwhm_reduction_doppler_only: Optional[float] = None
    brightness_ratio: Optional[float] = None


class FitMuSummary(BaseModel):
    mu: float
    mu_stderr: float = Field(ge=0)
    n_points: int = Field(ge=1)
    residuals: List[float]
    source_columns: List[str]


class McSummary(BaseModel):
    seed: int
    duration_s: float
    temperature_C: float
    signal_rate_hz: float
    heralding_probability: float
    background_idler_rate_hz: float
    jitter_fwhm_ps: float
    signal_events: int
    idler_events: int
    peak_window_ns: float
    car: Optional[float]
    car_sigma: float
    car_predicted: Optional[float]
    pair_rate_hz: float
    pair_rate_corrected_hz: float
    heralding_efficiency: float
    p1_fwhm_ns: Optional[float] = None


class DistanceScanSummary(BaseModel):
    reference_temperature_C: float
    ratios: List[float]
    strengths: List[float]
    fwhm_ns: List[float]
