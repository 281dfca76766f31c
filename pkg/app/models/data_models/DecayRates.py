from typing import Any

from pydantic import Field, model_validator

from app.models.data_models.base_models import FrozenModel


class DecayRates(FrozenModel):
    """Intrinsic idler, upper-transition and collective idler decay rates in rad/s"""
    gamma_idler: float = Field(gt=0)
    gamma_signal: float = Field(gt=0)
    gamma_sr: float = Field(gt=0)

    @model_validator(mode="before")
    @classmethod
    def default_collective_rate(cls, data: Any) -> Any:
        if isinstance(data, dict) and data.get("gamma_sr") is None and "gamma_idler" in data:
            data = {**data, "gamma_sr": data["gamma_idler"]}
        return data

    @property
    def strength(self) -> float:
        """Superradiance strength Gamma_SR / Gamma_I"""
        return self.gamma_sr / self.gamma_idler

    def with_strength(self, strength: float) -> "DecayRates":
        return self.model_copy(update={"gamma_sr": strength * self.gamma_idler})

    def without_enhancement(self) -> "DecayRates":
        return self.model_copy(update={"gamma_sr": self.gamma_idler})
