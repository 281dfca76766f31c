import math

from pydantic import Field

from app.models.data_models.base_models import FrozenModel


class CellGeometry(FrozenModel):
    """Cylindrical interaction region defined by the pump beam inside the cell"""
    length: float = Field(default=1.0e-3, ge=0)
    beam_waist: float = Field(default=78e-6, gt=0)

    @property
    def interaction_volume(self) -> float:
        """V = pi * w^2 * L"""
        return math.pi * self.beam_waist ** 2 * self.length
