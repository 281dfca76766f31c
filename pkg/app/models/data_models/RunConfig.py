"""Run configuration in lab units, one block per TOML section.

Each block converts itself to the SI parameter records the services use.
"""
import math
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.models.data_models.CellGeometry import CellGeometry
from app.models.data_models.DecayRates import DecayRates
from app.models.data_models.DetectionModel import DetectionModel
from app.models.data_models.DriveParams import DriveParams
from app.models.data_models.QuadratureSpec import QuadratureSpec
from app.models.data_models.SpeciesConstants import CS133_MASS_AMU, SpeciesConstants
from app.models.enums.McMode import McMode
from app.models.enums.QuadratureScheme import QuadratureScheme
from app.models.units import (
    MM,
    NM,
    NS,
    PS,
    UM,
    celsius_to_kelvin,
    ghz_to_rad_s,
    mhz_to_rad_s,
    wavenumber,
)
from scipy import constants

TABLE1_TEMPERATURES_C = [21.0, 29.0, 37.0, 49.0, 57.0, 65.0, 76.0, 87.0, 95.0]


class ConfigBlock(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


class SpeciesBlock(ConfigBlock):
    atomic_mass_amu: float = Field(default=CS133_MASS_AMU, gt=0)
    lambda_idler_nm: float = Field(default=852.347, gt=0)
    lambda_signal_nm: float = Field(default=917.48, gt=0)
    gamma_idler_mhz: float = Field(default=5.2, gt=0)
    # calibration value, not a measured line width
    gamma_signal_mhz: float = Field(default=30.0, gt=0)
    vapor_pressure_a: float = 9.2924
    vapor_pressure_b: float = Field(default=3871.5, gt=0)
    valid_t_min_k: float = Field(default=273.0, gt=0)
    valid_t_max_k: float = Field(default=500.0, gt=0)
    od_anchor_temperature_c: Optional[float] = 57.0
    od_anchor_value: Optional[float] = Field(default=1.5, gt=0)
    od_cross_section_m2: Optional[float] = Field(default=None, gt=0)

    def to_species(self) -> SpeciesConstants:
        return SpeciesConstants(
            atomic_mass=self.atomic_mass_amu * constants.atomic_mass,
            lambda_idler=self.lambda_idler_nm * NM,
            lambda_signal=self.lambda_signal_nm * NM,
            gamma_idler=mhz_to_rad_s(self.gamma_idler_mhz),
            gamma_signal=mhz_to_rad_s(self.gamma_signal_mhz),
            vapor_pressure_a=self.vapor_pressure_a,
            vapor_pressure_b=self.vapor_pressure_b,
            valid_t_min=self.valid_t_min_k,
            valid_t_max=self.valid_t_max_k,
        )


class GeometryBlock(ConfigBlock):
    length_mm: float = Field(default=1.0, ge=0)
    beam_waist_um: float = Field(default=78.0, gt=0)
    mu: float = Field(default=1.15e-6, ge=0)

    def to_geometry(self) -> CellGeometry:
        return CellGeometry(length=self.length_mm * MM, beam_waist=self.beam_waist_um * UM)


class DriveBlock(ConfigBlock):
    pump_detuning_ghz: float = 1.31
    coupling_detuning_ghz: float = -1.35
    coupling_rabi_mhz: float = Field(default=100.0, ge=0)
    pump_wavelength_nm: float = Field(default=852.347, gt=0)
    coupling_wavelength_nm: float = Field(default=917.48, gt=0)
    amplitude_per_atom: float = Field(default=1.0, ge=0)
    # recorded for provenance only
    pump_power_mw: float = Field(default=0.06, ge=0)
    coupling_power_mw: float = Field(default=15.0, ge=0)

    def to_drive(self) -> DriveParams:
        k_p = wavenumber(self.pump_wavelength_nm * NM)
        return DriveParams(
            delta_p=ghz_to_rad_s(self.pump_detuning_ghz),
            delta_c=ghz_to_rad_s(self.coupling_detuning_ghz),
            omega_c=mhz_to_rad_s(self.coupling_rabi_mhz),
            k_p=k_p,
            k_c=wavenumber(self.coupling_wavelength_nm * NM),
            k_1=k_p,
        )


class DetectionBlock(ConfigBlock):
    jitter_fwhm_ps: float = Field(default=100.0, ge=0)
    bin_width_ps: float = Field(default=5.0, gt=0)
    efficiency_signal: float = Field(default=0.50, ge=0, le=1)
    efficiency_idler: float = Field(default=0.70, ge=0, le=1)
    coincidence_window_ns: Optional[float] = Field(default=None, gt=0)
    peak_window_fwhm_multiple: float = Field(default=4.0, gt=0)
    accidental_window_multiple: float = Field(default=5.0, gt=0)
    span_min_ns: float = -1.0
    span_max_ns: float = 5.0

    @model_validator(mode="after")
    def check_span(self) -> "DetectionBlock":
        if self.span_min_ns > 0 or self.span_max_ns <= 0:
            raise ValueError("span_min_ns .. span_max_ns must contain tau = 0")
        # the jitter spreads the step at tau = 0 backwards by a few sigma
        lead_in_ps = 3.0 * self.jitter_fwhm_ps / (2.0 * math.sqrt(2.0 * math.log(2.0)))
        if -self.span_min_ns * 1e3 < lead_in_ps:
            raise ValueError(f"span_min_ns must be at most {-lead_in_ps / 1e3:g} ns for a {self.jitter_fwhm_ps:g} ps jitter")
        return self

    def to_detection(self) -> DetectionModel:
        return DetectionModel(
            jitter_fwhm=self.jitter_fwhm_ps * PS,
            bin_width=self.bin_width_ps * PS,
            efficiency_signal=self.efficiency_signal,
            efficiency_idler=self.efficiency_idler,
            coincidence_window=None if self.coincidence_window_ns is None else self.coincidence_window_ns * NS,
            peak_window_fwhm_multiple=self.peak_window_fwhm_multiple,
            accidental_window_multiple=self.accidental_window_multiple,
            span_min=self.span_min_ns * NS,
            span_max=self.span_max_ns * NS,
        )


class QuadratureBlock(ConfigBlock):
    scheme: QuadratureScheme = QuadratureScheme.GAUSS_LEGENDRE
    node_count: int = Field(default=4001, ge=2)
    cutoff_sigmas: float = Field(default=4.0, gt=0)
    verify_convergence: bool = False
    convergence_rtol: float = Field(default=1e-4, gt=0)

    def to_quadrature(self) -> QuadratureSpec:
        return QuadratureSpec(**self.model_dump())


class SweepBlock(ConfigBlock):
    temperatures_c: List[float] = Field(default_factory=lambda: list(TABLE1_TEMPERATURES_C))
    distance_ratios: List[float] = Field(default_factory=lambda: [0.3, 0.5, 1.2])
    distance_reference_temperature_c: float = 21.0

    @model_validator(mode="after")
    def check_ratios(self) -> "SweepBlock":
        if any(r <= 0 for r in self.distance_ratios):
            raise ValueError("distance_ratios must be positive")
        return self

    @property
    def temperatures_k(self) -> List[float]:
        return [celsius_to_kelvin(t) for t in self.temperatures_c]


class McBlock(ConfigBlock):
    mode: McMode = McMode.OPERATING_POINT
    temperature_c: float = 95.0
    target_pair_rate_hz: float = Field(default=1e6, gt=0)
    target_car: float = Field(default=200.0, gt=1)
    heralding_probability: float = Field(default=0.22, ge=0, le=1)
    signal_rate_hz: Optional[float] = Field(default=None, ge=0)
    background_idler_rate_hz: Optional[float] = Field(default=None, ge=0)
    jitter_fwhm_ps: Optional[float] = Field(default=None, ge=0)
    duration_s: float = Field(default=0.5, gt=0)
    seed: int = Field(default=42, ge=0, lt=2 ** 64)
    histogram_min_ns: float = -20.0
    histogram_max_ns: float = 20.0

    @model_validator(mode="after")
    def check_mode(self) -> "McBlock":
        if self.mode == McMode.RATES and (self.signal_rate_hz is None or self.background_idler_rate_hz is None):
            raise ValueError("mode = 'rates' needs signal_rate_hz and background_idler_rate_hz")
        if self.histogram_max_ns <= self.histogram_min_ns:
            raise ValueError("histogram_max_ns must exceed histogram_min_ns")
        return self


class RunConfig(ConfigBlock):
    species: SpeciesBlock = Field(default_factory=SpeciesBlock)
    geometry: GeometryBlock = Field(default_factory=GeometryBlock)
    drive: DriveBlock = Field(default_factory=DriveBlock)
    detection: DetectionBlock = Field(default_factory=DetectionBlock)
    quadrature: QuadratureBlock = Field(default_factory=QuadratureBlock)
    sweep: SweepBlock = Field(default_factory=SweepBlock)
    mc: McBlock = Field(default_factory=McBlock)

    @property
    def mu(self) -> float:
        return self.geometry.mu

    def base_rates(self) -> DecayRates:
        species = self.species.to_species()
        return DecayRates(gamma_idler=species.gamma_idler, gamma_signal=species.gamma_signal)

    def mc_jitter_fwhm(self) -> float:
        if self.mc.jitter_fwhm_ps is None:
            return self.detection.jitter_fwhm_ps * PS
        return self.mc.jitter_fwhm_ps * PS
