import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict

from app.models.data_models.McRates import McRates
from app.models.data_models.RunConfig import RunConfig
from app.models.data_models.SweepTable import SweepFailure, SweepRow, SweepTable
from app.models.data_models.ThermalState import ThermalState
from app.models.data_models.Waveform import Waveform
from app.models.enums.McMode import McMode
from app.models.exceptions import DegenerateInputError, VaporPairError
from app.models.service_classes.StrengthService import StrengthService
from app.models.units import celsius_to_kelvin
from app.schemas.summaries import Table1Row
from app.services.analysis_service import convolve_jitter, fwhm, predicted_car
from app.services.biphoton_service import normalized_waveform, superradiant_rate, superradiant_rate_from_distance, tau_grid
from app.services.coincidence_service import operating_point
from app.services.reference_data import REFERENCE_TABLE
from app.services.vapor_service import resolve_kappa, thermal_state
from app.settings import get_settings

logger = logging.getLogger(__name__)

R_SR_TOLERANCE = 0.10
OD_TOLERANCE = 0.20


class WaveformResult(BaseModel):
    """Forward-model output at one temperature"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    state: ThermalState
    strength: float
    p1_raw: Waveform
    p1_convolved: Waveform
    fwhm_pre_jitter: float
    fwhm_post_jitter: float


class DistanceResult(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    ratio: float
    strength: float
    p1_convolved: Waveform
    fwhm_post_jitter: float


class SweepService:
    """Runs the temperature-dependent forward model for one configuration"""

    def __init__(self, config: RunConfig, max_workers: Optional[int] = None):
        self.config = config
        self.species = config.species.to_species()
        self.geometry = config.geometry.to_geometry()
        self.drive = config.drive.to_drive()
        self.detection = config.detection.to_detection()
        self.quad = config.quadrature.to_quadrature()
        self.rates = config.base_rates()
        self.kappa = resolve_kappa(config.species, self.geometry, self.species)
        self.tau = tau_grid(self.detection.span_min, self.detection.span_max, self.detection.bin_width)
        self.max_workers = max_workers or get_settings().max_workers

    def state(self, temperature: float) -> ThermalState:
        return thermal_state(temperature, self.geometry, self.species, self.kappa)

    def forward_model(self, temperature: float) -> Tuple[ThermalState, StrengthService]:
        state = self.state(temperature)
        model = StrengthService(self.drive, self.rates, state.u, self.detection, self.quad, self.tau)
        return state, model

    def strength_at(self, state: ThermalState) -> float:
        gamma_sr = superradiant_rate(state.atom_count, self.config.mu, self.rates.gamma_idler)
        return gamma_sr / self.rates.gamma_idler

    def waveform(self, temperature: float) -> WaveformResult:
        state, model = self.forward_model(temperature)
        strength = self.strength_at(state)
        raw = model.p1(strength)
        convolved = convolve_jitter(raw, self.detection.jitter_fwhm)
        return WaveformResult(
            state=state,
            strength=strength,
            p1_raw=raw,
            p1_convolved=convolved,
            fwhm_pre_jitter=fwhm(raw),
            fwhm_post_jitter=fwhm(convolved),
        )

    def resolve_mc_rates(self, reference: Optional[WaveformResult] = None) -> McRates:
        """Monte Carlo rates, solved from the target operating point when configured so"""
        mc = self.config.mc
        jitter = self.config.mc_jitter_fwhm()
        if mc.mode == McMode.RATES:
            return McRates(
                signal_rate=mc.signal_rate_hz,
                heralding_probability=mc.heralding_probability,
                background_idler_rate=mc.background_idler_rate_hz,
                jitter_fwhm=jitter,
            )
        reference = reference or self.waveform(celsius_to_kelvin(mc.temperature_c))
        window = self.detection.peak_window(reference.fwhm_post_jitter)
        return operating_point(
            mc.target_pair_rate_hz, mc.target_car, mc.heralding_probability,
            reference.p1_convolved, window, jitter,
        )

    def sweep_row(self, temperature: float, mc_rates: Optional[McRates]) -> SweepRow:
        state, model = self.forward_model(temperature)
        strength = self.strength_at(state)
        gamma_sr = strength * self.rates.gamma_idler
        g2 = model.integral.g2(gamma_sr)
        raw = normalized_waveform(g2)
        convolved = convolve_jitter(raw, self.detection.jitter_fwhm)
        post = fwhm(convolved)
        doppler = convolve_jitter(normalized_waveform(model.integral.g2(self.rates.gamma_idler)), self.detection.jitter_fwhm)
        amplitude = self.config.drive.amplitude_per_atom * state.atom_count
        car_value = None
        if mc_rates is not None:
            car_value = predicted_car(convolved, mc_rates, self.detection.peak_window(post))
            if not math.isfinite(car_value):
                car_value = None
        row = SweepRow(
            temperature=temperature,
            od=state.optical_depth if state.optical_depth is not None else 0.0,
            r_sr_over_lambda=state.r_sr_over_lambda,
            fwhm_pre_jitter=fwhm(raw),
            fwhm_post_jitter=post,
            fwhm_doppler_only=fwhm(doppler),
            strength=strength,
            brightness=model.integral.g2(gamma_sr, amplitude).integral(),
            car_predicted=car_value,
            regime=state.regime,
        )
        logger.info(
            f"{temperature:.2f} K: strength {strength:.2f}, FWHM {post * 1e9:.3f} ns "
            f"(pre-jitter {row.fwhm_pre_jitter * 1e9:.3f} ns), CAR {row.car_predicted}"
        )
        return row

    def _safe_row(
        self, temperature: float, mc_rates: Optional[McRates], rates_error: Optional[VaporPairError]
    ) -> Tuple[Optional[SweepRow], List[SweepFailure]]:
        try:
            row = self.sweep_row(temperature, mc_rates)
        except (VaporPairError, ValueError) as exc:
            logger.warning(f"Sweep row at {temperature:.2f} K failed: {exc}")
            return None, [SweepFailure(temperature=temperature, error_type=type(exc).__name__, message=str(exc))]
        if row.car_predicted is not None:
            return row, []
        if rates_error is not None:
            error_type, message = type(rates_error).__name__, str(rates_error)
        else:
            error_type, message = DegenerateInputError.__name__, "Idler singles rate is zero, so the CAR is unbounded"
        return row, [SweepFailure(temperature=temperature, error_type=error_type, message=message, column="car_predicted")]

    def temperature_sweep(self, temperatures: Optional[List[float]] = None) -> SweepTable:
        """One row per temperature in K, computed concurrently and assembled in ascending order.

        A row that fails is left out and recorded; when only the predicted CAR
        cannot be evaluated the row is kept and the column failure recorded.
        """
        temperatures = sorted(self.config.sweep.temperatures_k if temperatures is None else temperatures)
        if not temperatures:
            return SweepTable()
        mc_rates, rates_error = None, None
        try:
            mc_rates = self.resolve_mc_rates()
        except VaporPairError as exc:
            logger.warning(f"No Monte Carlo rates for the CAR column: {exc}")
            rates_error = exc
        with ThreadPoolExecutor(max_workers=self.max_workers) as pool:
            results = list(pool.map(lambda t: self._safe_row(t, mc_rates, rates_error), temperatures))
        rows = [row for row, _ in results if row is not None]
        failures = [failure for _, row_failures in results for failure in row_failures]
        if failures:
            logger.warning(f"{len(failures)} failures over {len(temperatures)} sweep temperatures")
        return SweepTable(rows=rows, failures=failures)

    def distance_scan(
        self, ratios: Optional[List[float]] = None, reference_temperature: Optional[float] = None
    ) -> List[DistanceResult]:
        """Convolved P1 for fixed r_SR / lambda_I values at the thermal speed of one temperature"""
        ratios = self.config.sweep.distance_ratios if ratios is None else ratios
        if reference_temperature is None:
            reference_temperature = celsius_to_kelvin(self.config.sweep.distance_reference_temperature_c)
        _, model = self.forward_model(reference_temperature)
        results = []
        for ratio in ratios:
            gamma_sr = superradiant_rate_from_distance(
                ratio * self.species.lambda_idler,
                self.geometry.interaction_volume,
                self.species.lambda_idler,
                self.config.mu,
                self.rates.gamma_idler,
            )
            strength = gamma_sr / self.rates.gamma_idler
            convolved = model.p1_convolved(strength)
            results.append(DistanceResult(ratio=ratio, strength=strength, p1_convolved=convolved,
                                          fwhm_post_jitter=fwhm(convolved)))
        return results

    def table1_comparison(self) -> List[Table1Row]:
        """Computed optical depth and r_SR / lambda_I against the measured table"""
        rows = []
        for ref in REFERENCE_TABLE:
            state = self.state(celsius_to_kelvin(ref.temperature_c))
            od = state.optical_depth if state.optical_depth is not None else float("nan")
            r_band = max(R_SR_TOLERANCE * ref.r_sr_over_lambda, ref.r_sr_over_lambda_uncertainty)
            od_band = max(OD_TOLERANCE * ref.optical_depth, ref.optical_depth_uncertainty)
            rows.append(Table1Row(
                temperature_C=ref.temperature_c,
                od_measured=ref.optical_depth,
                od_computed=od,
                od_pass=bool(abs(od - ref.optical_depth) <= od_band),
                r_sr_over_lambda_measured=ref.r_sr_over_lambda,
                r_sr_over_lambda_uncertainty=ref.r_sr_over_lambda_uncertainty,
                r_sr_over_lambda_computed=state.r_sr_over_lambda,
                r_sr_pass=bool(abs(state.r_sr_over_lambda - ref.r_sr_over_lambda) <= r_band),
                regime=state.regime.value,
            ))
        return rows


def temperature_sweep(config: RunConfig, temperatures: Optional[List[float]] = None) -> SweepTable:
    return SweepService(config).temperature_sweep(temperatures)
