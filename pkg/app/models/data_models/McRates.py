from pydantic import Field

from app.models.data_models.base_models import FrozenModel


class McRates(FrozenModel):
    """Detected event rates driving the Monte Carlo generator"""
    signal_rate: float = Field(ge=0)
    heralding_probability: float = Field(ge=0, le=1)
    background_idler_rate: float = Field(ge=0)
    jitter_fwhm: float = Field(default=100e-12, ge=0)

    @property
    def pair_rate(self) -> float:
        """Correlated idler detections per second"""
        return self.signal_rate * self.heralding_probability

    @property
    def idler_singles_rate(self) -> float:
        return self.background_idler_rate + self.pair_rate
