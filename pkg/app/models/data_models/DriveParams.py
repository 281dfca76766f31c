import math
from typing import Any

from pydantic import Field, model_validator

from app.models.data_models.base_models import FrozenModel

PUMP_WAVELENGTH = 852.347e-9
COUPLING_WAVELENGTH = 917.48e-9


class DriveParams(FrozenModel):
    """Pump and coupling fields in angular units.

    amplitude_scale is the prefactor C of the velocity amplitude. The kernel
    treats it as given; callers that want C proportional to the atom number
    build it with for_atom_count().
    """
    delta_p: float = 2 * math.pi * 1.31e9
    delta_c: float = -2 * math.pi * 1.35e9
    omega_c: float = Field(default=2 * math.pi * 100e6, ge=0)
    k_p: float = Field(default=2 * math.pi / PUMP_WAVELENGTH, gt=0)
    k_c: float = Field(default=2 * math.pi / COUPLING_WAVELENGTH, gt=0)
    k_1: float = Field(default=2 * math.pi / PUMP_WAVELENGTH, gt=0)
    amplitude_scale: float = Field(default=1.0, ge=0)

    @model_validator(mode="before")
    @classmethod
    def default_idler_wavenumber(cls, data: Any) -> Any:
        # the idler phase wavenumber follows the pump unless set explicitly
        if isinstance(data, dict) and "k_p" in data and "k_1" not in data:
            data = {**data, "k_1": data["k_p"]}
        return data

    @property
    def delta_two(self) -> float:
        """Two-photon detuning delta_p + delta_c"""
        return self.delta_p + self.delta_c

    def for_atom_count(self, atom_count: float, amplitude_per_atom: float = 1.0) -> "DriveParams":
        return self.model_copy(update={"amplitude_scale": amplitude_per_atom * atom_count})
