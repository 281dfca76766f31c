import math
from typing import List, Optional

import pandas as pd
from pydantic import Field, model_validator

from app.models.data_models.base_models import FrozenModel
from app.models.enums.EmissionRegime import EmissionRegime
from app.models.units import NS, kelvin_to_celsius

CSV_COLUMNS = [
    "temperature_C",
    "OD",
    "r_sr_over_lambda",
    "fwhm_ns",
    "strength",
    "brightness_rel",
    "car_predicted",
    "fwhm_pre_jitter_ns",
    "fwhm_doppler_only_ns",
    "brightness",
    "regime",
]


class SweepRow(FrozenModel):
    temperature: float = Field(gt=0)
    od: float = Field(ge=0)
    r_sr_over_lambda: float = Field(gt=0)
    fwhm_pre_jitter: float = Field(gt=0)
    fwhm_post_jitter: float = Field(gt=0)
    fwhm_doppler_only: float = Field(gt=0)
    strength: float = Field(ge=1)
    brightness: float = Field(ge=0)
    # None when the Monte Carlo rates or the CAR itself could not be evaluated
    car_predicted: Optional[float] = Field(default=None, ge=1)
    regime: EmissionRegime


class SweepFailure(FrozenModel):
    """A failed row, or one failed column of an emitted row when column is set"""
    temperature: float
    error_type: str
    message: str
    column: Optional[str] = None


class SweepTable(FrozenModel):
    """Per-temperature results in ascending temperature order; failed rows kept apart"""
    rows: List[SweepRow] = Field(default_factory=list)
    failures: List[SweepFailure] = Field(default_factory=list)

    @model_validator(mode="after")
    def check_rows(self) -> "SweepTable":
        temperatures = [row.temperature for row in self.rows]
        if temperatures != sorted(temperatures):
            raise ValueError("Sweep rows must be sorted by temperature")
        for row in self.rows:
            for name, value in row.model_dump().items():
                if isinstance(value, float) and not math.isfinite(value):
                    raise ValueError(f"Non-finite {name} in row at {row.temperature} K")
        return self

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_frame(self) -> pd.DataFrame:
        """Rows in lab units with the fixed CSV column order"""
        reference = self.rows[0].brightness if self.rows else 0.0
        records = []
        for row in self.rows:
            records.append({
                "temperature_C": kelvin_to_celsius(row.temperature),
                "OD": row.od,
                "r_sr_over_lambda": row.r_sr_over_lambda,
                "fwhm_ns": row.fwhm_post_jitter / NS,
                "strength": row.strength,
                "brightness_rel": row.brightness / reference if reference > 0 else float("nan"),
                "car_predicted": row.car_predicted if row.car_predicted is not None else float("nan"),
                "fwhm_pre_jitter_ns": row.fwhm_pre_jitter / NS,
                "fwhm_doppler_only_ns": row.fwhm_doppler_only / NS,
                "brightness": row.brightness,
                "regime": row.regime.value,
            })
        return pd.DataFrame.from_records(records, columns=CSV_COLUMNS)
