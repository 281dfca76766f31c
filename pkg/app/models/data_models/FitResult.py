from typing import List

from pydantic import Field

from app.models.data_models.base_models import FrozenModel


class FitResult(FrozenModel):
    """Least-squares estimate of mu in strength = 1 + mu * N"""
    mu: float
    mu_stderr: float = Field(ge=0)
    residuals: List[float]
    n_points: int = Field(ge=1)
