"""Temperature to vapor density chain for the cesium cell.

Vapor pressure follows a two-coefficient liquid-phase relation
log10(P / Pa) = A - B / T, the ideal gas law gives the density, and the
average interatomic distance is r_SR = (5/9) * n^(-1/3).
"""
import logging
import math
from typing import Optional, Union

import numpy as np
from scipy import constants

from app.models.data_models.CellGeometry import CellGeometry
from app.models.data_models.RunConfig import SpeciesBlock
from app.models.data_models.SpeciesConstants import SpeciesConstants
from app.models.data_models.ThermalState import ThermalState
from app.models.enums.EmissionRegime import EmissionRegime
from app.models.exceptions import CalibrationError, DomainError, RangeError
from app.models.units import celsius_to_kelvin

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

DISTANCE_PREFACTOR = 5.0 / 9.0


def _positive(name: str, value: ArrayLike) -> None:
    if np.any(np.asarray(value) <= 0) or np.any(~np.isfinite(np.asarray(value, dtype=float))):
        raise DomainError(f"{name} must be positive and finite, got {value}")


def vapor_pressure(temperature: float, species: SpeciesConstants) -> float:
    """Saturated vapor pressure in Pa"""
    if not species.valid_t_min <= temperature <= species.valid_t_max:
        raise RangeError(
            f"Temperature {temperature} K outside the vapor-pressure band "
            f"[{species.valid_t_min}, {species.valid_t_max}] K"
        )
    a, b = species.vapor_pressure_coeffs
    return 10.0 ** (a - b / temperature)


def number_density(temperature: float, pressure: float) -> float:
    """Ideal gas n = P / (k_B T) in m^-3"""
    _positive("temperature", temperature)
    _positive("pressure", pressure)
    return pressure / (constants.k * temperature)


def interatomic_distance(density: ArrayLike) -> ArrayLike:
    _positive("density", density)
    return DISTANCE_PREFACTOR * np.power(density, -1.0 / 3.0)


def density_from_distance(r_sr: ArrayLike) -> ArrayLike:
    """Inverse of interatomic_distance"""
    _positive("r_sr", r_sr)
    return (DISTANCE_PREFACTOR / r_sr) ** 3


def most_probable_speed(temperature: float, mass: float) -> float:
    """u = sqrt(2 k_B T / m)"""
    _positive("temperature", temperature)
    _positive("mass", mass)
    return math.sqrt(2.0 * constants.k * temperature / mass)


def optical_depth(density: float, length: float, kappa: Optional[float]) -> float:
    """Beer-Lambert OD = kappa * n * L"""
    if kappa is None:
        raise CalibrationError("Optical depth needs a calibrated cross-section kappa")
    if density < 0 or length < 0:
        raise DomainError(f"Density and length must be nonnegative, got n={density}, L={length}")
    return kappa * density * length


def calibrate_kappa(
    anchor_temperature: float,
    anchor_od: float,
    geometry: CellGeometry,
    species: SpeciesConstants,
) -> float:
    """Cross-section that reproduces one measured optical depth"""
    if anchor_od <= 0:
        raise CalibrationError(f"Calibration optical depth must be positive, got {anchor_od}")
    if geometry.length <= 0:
        raise CalibrationError("Cannot calibrate kappa with a zero-length cell")
    density = number_density(anchor_temperature, vapor_pressure(anchor_temperature, species))
    kappa = anchor_od / (density * geometry.length)
    logger.info(f"Calibrated kappa = {kappa:.4e} m^2 from OD {anchor_od} at {anchor_temperature:.2f} K")
    return kappa


def resolve_kappa(block: SpeciesBlock, geometry: CellGeometry, species: SpeciesConstants) -> Optional[float]:
    """Explicit cross-section if configured, else the anchor calibration, else None"""
    if block.od_cross_section_m2 is not None:
        return block.od_cross_section_m2
    if block.od_anchor_temperature_c is None or block.od_anchor_value is None:
        logger.warning("No optical-depth calibration configured")
        return None
    return calibrate_kappa(celsius_to_kelvin(block.od_anchor_temperature_c), block.od_anchor_value, geometry, species)


def classify_regime(r_sr: float, lambda_1: float) -> EmissionRegime:
    if r_sr < 0.5 * lambda_1:
        return EmissionRegime.PRONOUNCED
    if r_sr < lambda_1:
        return EmissionRegime.SUBWAVELENGTH
    return EmissionRegime.DILUTE


def thermal_state(
    temperature: float,
    geometry: CellGeometry,
    species: SpeciesConstants,
    kappa: Optional[float] = None,
) -> ThermalState:
    """All temperature-derived quantities for one cell temperature in K"""
    pressure = vapor_pressure(temperature, species)
    density = number_density(temperature, pressure)
    r_sr = interatomic_distance(density)
    od = optical_depth(density, geometry.length, kappa) if kappa is not None else None
    state = ThermalState(
        temperature=temperature,
        pressure=pressure,
        density=density,
        atom_count=density * geometry.interaction_volume,
        r_sr=r_sr,
        r_sr_over_lambda=r_sr / species.lambda_idler,
        regime=classify_regime(r_sr, species.lambda_idler),
        u=most_probable_speed(temperature, species.atomic_mass),
        optical_depth=od,
    )
    logger.debug(
        f"T={temperature:.2f} K: n={density:.4e} m^-3, N={state.atom_count:.4e}, "
        f"r_SR/lambda={state.r_sr_over_lambda:.3f}, OD={od}"
    )
    return state
