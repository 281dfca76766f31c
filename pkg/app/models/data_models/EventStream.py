from typing import Optional

import numpy as np
from pydantic import Field, field_validator, model_validator

from app.models.data_models.base_models import ArrayModel
from app.models.enums.Channel import Channel
from app.models.units import PS, seconds_to_ps


class EventStream(ArrayModel):
    """Detection timestamps of one channel, integer picoseconds, ascending"""
    channel: Channel
    timestamps_ps: np.ndarray
    duration: float = Field(ge=0)
    seed: Optional[int] = None

    @field_validator("timestamps_ps", mode="before")
    @classmethod
    def coerce_timestamps(cls, v):
        arr = np.array(v, dtype=np.int64).reshape(-1)
        arr.setflags(write=False)
        return arr

    @model_validator(mode="after")
    def check_timestamps(self) -> "EventStream":
        ts = self.timestamps_ps
        if ts.size:
            if np.any(np.diff(ts) < 0):
                raise ValueError(f"{self.channel.value} timestamps are not sorted")
            if ts[0] < 0 or ts[-1] > self.duration_ps:
                raise ValueError(
                    f"{self.channel.value} timestamps leave [0, {self.duration_ps}] ps"
                )
        return self

    def __len__(self) -> int:
        return int(self.timestamps_ps.size)

    @property
    def duration_ps(self) -> int:
        return seconds_to_ps(self.duration)

    @property
    def seconds(self) -> np.ndarray:
        return self.timestamps_ps * PS
