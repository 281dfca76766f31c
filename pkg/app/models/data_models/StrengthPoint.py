from typing import Optional

from pydantic import Field

from app.models.data_models.base_models import FrozenModel

FIT_TOLERANCE = 0.05


class StrengthPoint(FrozenModel):
    """One superradiance-strength observation: strength = Gamma_SR / Gamma_I at atom count N"""
    temperature: Optional[float] = Field(default=None, gt=0)
    atom_count: float = Field(ge=0)
    measured_fwhm: Optional[float] = Field(default=None, gt=0)
    strength: float = Field(ge=1.0 - FIT_TOLERANCE)
