from pydantic import Field

from app.models.data_models.base_models import FrozenModel


class ReferenceRow(FrozenModel):
    """Measured optical depth and interatomic distance at one cell temperature"""
    temperature_c: float
    optical_depth: float = Field(gt=0)
    optical_depth_uncertainty: float = Field(ge=0)
    r_sr_over_lambda: float = Field(gt=0)
    r_sr_over_lambda_uncertainty: float = Field(ge=0)
