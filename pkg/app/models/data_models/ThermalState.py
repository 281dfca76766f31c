from typing import Optional

from pydantic import Field

from app.models.data_models.base_models import FrozenModel
from app.models.enums.EmissionRegime import EmissionRegime


class ThermalState(FrozenModel):
    temperature: float = Field(gt=0)
    pressure: float = Field(gt=0)
    density: float = Field(gt=0)
    atom_count: float = Field(ge=0)
    r_sr: float = Field(gt=0)
    r_sr_over_lambda: float = Field(gt=0)
    regime: EmissionRegime
    u: float = Field(gt=0)
    # None when no optical-depth calibration was supplied
    optical_depth: Optional[float] = Field(default=None, ge=0)
