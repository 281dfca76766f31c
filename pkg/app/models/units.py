"""Boundary unit conversions. Config and CSV files use lab units, the core works in SI."""
import math

from scipy import constants

KELVIN_OFFSET = constants.zero_Celsius
TWO_PI = 2.0 * math.pi

GHZ = constants.giga
MHZ = constants.mega
NM = constants.nano
UM = constants.micro
MM = constants.milli
PS = constants.pico
NS = constants.nano


def celsius_to_kelvin(temperature_c: float) -> float:
    return temperature_c + KELVIN_OFFSET


def kelvin_to_celsius(temperature_k: float) -> float:
    return temperature_k - KELVIN_OFFSET


def ghz_to_rad_s(value_ghz: float) -> float:
    """Cyclic GHz to angular frequency"""
    return TWO_PI * value_ghz * GHZ


def mhz_to_rad_s(value_mhz: float) -> float:
    """Cyclic MHz to angular frequency"""
    return TWO_PI * value_mhz * MHZ


def wavenumber(wavelength_m: float) -> float:
    return TWO_PI / wavelength_m


def seconds_to_ps(value_s: float) -> int:
    return int(round(value_s / PS))
