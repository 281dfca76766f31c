from typing import Optional

import numpy as np
from pydantic import Field, field_validator, model_validator

from app.models.data_models.base_models import ArrayModel
from app.models.enums.WaveformKind import WaveformKind

NORMALIZATION_TOLERANCE = 1e-6


class Waveform(ArrayModel):
    """Real, nonnegative function sampled on tau_start + i * tau_step"""
    tau_start: float
    tau_step: float = Field(gt=0)
    values: np.ndarray
    kind: WaveformKind
    # constant prefactor of the samples; g2 keeps |C|^2 here so the shape never sees it
    scale: float = Field(default=1.0, ge=0)

    @field_validator("values", mode="before")
    @classmethod
    def coerce_values(cls, v):
        arr = np.array(v, dtype=np.float64)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("Waveform values must be a non-empty 1-D array")
        if not np.all(np.isfinite(arr)):
            raise ValueError("Waveform values must be finite")
        if np.any(arr < 0):
            raise ValueError(f"Waveform values must be nonnegative, minimum is {arr.min()}")
        arr.setflags(write=False)
        return arr

    @model_validator(mode="after")
    def check_kind_invariants(self) -> "Waveform":
        if self.kind.is_causal:
            negative = self.tau < -1e-6 * self.tau_step
            if np.any(self.values[negative] != 0.0):
                raise ValueError(f"{self.kind.value} waveform must vanish for tau < 0")
        if self.kind == WaveformKind.P1_NORMALIZED:
            area = self.integral()
            if abs(area - 1.0) > NORMALIZATION_TOLERANCE:
                raise ValueError(f"p1_normalized waveform integrates to {area}, expected 1")
        return self

    def __len__(self) -> int:
        return int(self.values.size)

    @property
    def tau(self) -> np.ndarray:
        return self.tau_start + np.arange(self.values.size) * self.tau_step

    @property
    def tau_end(self) -> float:
        return self.tau_start + (self.values.size - 1) * self.tau_step

    @property
    def scaled_values(self) -> np.ndarray:
        return self.values if self.scale == 1.0 else self.scale * self.values

    def shape_integral(self) -> float:
        """Area of the samples without the prefactor"""
        if self.kind == WaveformKind.HISTOGRAM_DENSITY:
            return float(self.values.sum() * self.tau_step)
        return float(np.trapezoid(self.values, dx=self.tau_step))

    def integral(self) -> float:
        """Trapezoid area, or rectangle area for histogram densities, times the prefactor"""
        return self.scale * self.shape_integral()

    def peak_index(self) -> int:
        return int(np.argmax(self.values))

    def with_values(self, values: np.ndarray, kind: WaveformKind, scale: Optional[float] = None) -> "Waveform":
        return Waveform(
            tau_start=self.tau_start,
            tau_step=self.tau_step,
            values=values,
            kind=kind,
            scale=self.scale if scale is None else scale,
        )
