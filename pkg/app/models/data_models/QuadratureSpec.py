from pydantic import Field, model_validator

from app.models.data_models.base_models import FrozenModel
from app.models.enums.QuadratureScheme import QuadratureScheme


class QuadratureSpec(FrozenModel):
    """Velocity quadrature over [-cutoff_sigmas * u, +cutoff_sigmas * u]"""
    cutoff_sigmas: float = Field(default=4.0, gt=0)
    node_count: int = Field(default=4001, ge=2)
    scheme: QuadratureScheme = QuadratureScheme.GAUSS_LEGENDRE
    verify_convergence: bool = False
    convergence_rtol: float = Field(default=1e-4, gt=0)

    @model_validator(mode="after")
    def check_symmetric_grid(self) -> "QuadratureSpec":
        if self.scheme == QuadratureScheme.TRAPEZOID and self.node_count % 2 == 0:
            raise ValueError(f"Trapezoid grids need an odd node_count, got {self.node_count}")
        return self

    def refined(self) -> "QuadratureSpec":
        """Doubled grid that keeps node parity"""
        return self.model_copy(update={"node_count": 2 * self.node_count - 1, "verify_convergence": False})
