import math

from pydantic import Field, model_validator
from scipy import constants

from app.models.data_models.base_models import FrozenModel

CS133_MASS_AMU = 132.905451933
CS133_MASS = CS133_MASS_AMU * constants.atomic_mass


class SpeciesConstants(FrozenModel):
    """Atomic constants of the cascade system, SI units"""
    atomic_mass: float = Field(default=CS133_MASS, gt=0)
    lambda_idler: float = Field(default=852.347e-9, gt=0)
    lambda_signal: float = Field(default=917.48e-9, gt=0)
    gamma_idler: float = Field(default=2 * math.pi * 5.2e6, gt=0)
    gamma_signal: float = Field(default=2 * math.pi * 30.0e6, gt=0)
    # log10(P / Pa) = A - B / T, liquid phase
    vapor_pressure_a: float = 9.2924
    vapor_pressure_b: float = Field(default=3871.5, gt=0)
    valid_t_min: float = Field(default=273.0, gt=0)
    valid_t_max: float = Field(default=500.0, gt=0)

    @model_validator(mode="after")
    def check_ordering(self) -> "SpeciesConstants":
        if self.lambda_idler >= self.lambda_signal:
            raise ValueError(
                f"lambda_idler ({self.lambda_idler}) must be shorter than lambda_signal ({self.lambda_signal})"
            )
        if self.valid_t_min >= self.valid_t_max:
            raise ValueError(f"Empty vapor-pressure band [{self.valid_t_min}, {self.valid_t_max}] K")
        return self

    @property
    def vapor_pressure_coeffs(self) -> tuple[float, float]:
        return (self.vapor_pressure_a, self.vapor_pressure_b)
