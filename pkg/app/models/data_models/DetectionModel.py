from typing import Optional

from pydantic import Field, model_validator

from app.models.data_models.base_models import FrozenModel


class DetectionModel(FrozenModel):
    """Detector timing and efficiency model plus the TCSPC histogram span"""
    jitter_fwhm: float = Field(default=100e-12, ge=0)
    bin_width: float = Field(default=5e-12, gt=0)
    efficiency_signal: float = Field(default=0.50, ge=0, le=1)
    efficiency_idler: float = Field(default=0.70, ge=0, le=1)
    # fixed CAR peak window; None derives it from the post-jitter FWHM
    coincidence_window: Optional[float] = Field(default=None, gt=0)
    peak_window_fwhm_multiple: float = Field(default=4.0, gt=0)
    accidental_window_multiple: float = Field(default=5.0, gt=0)
    span_min: float = -1e-9
    span_max: float = 5e-9

    @model_validator(mode="after")
    def check_span(self) -> "DetectionModel":
        if self.span_max <= self.span_min:
            raise ValueError(f"span_max ({self.span_max}) must exceed span_min ({self.span_min})")
        if self.span_min > 0 or self.span_max <= 0:
            raise ValueError("The waveform span must contain tau = 0")
        return self

    def peak_window(self, post_jitter_fwhm: float) -> float:
        if self.coincidence_window is not None:
            return self.coincidence_window
        return self.peak_window_fwhm_multiple * post_jitter_fwhm

    @property
    def pair_efficiency(self) -> float:
        return self.efficiency_signal * self.efficiency_idler
