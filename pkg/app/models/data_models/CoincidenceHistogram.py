import numpy as np
from pydantic import Field, field_validator, model_validator

from app.models.data_models.base_models import ArrayModel
from app.models.exceptions import DomainError


class CoincidenceHistogram(ArrayModel):
    """Start-stop counts over [tau_min, tau_max) in bins of bin_width seconds"""
    bin_width: float = Field(gt=0)
    tau_min: float
    tau_max: float
    counts: np.ndarray

    @field_validator("counts", mode="before")
    @classmethod
    def coerce_counts(cls, v):
        arr = np.array(v, dtype=np.int64).reshape(-1)
        if np.any(arr < 0):
            raise ValueError("Histogram counts must be nonnegative")
        arr.setflags(write=False)
        return arr

    @model_validator(mode="after")
    def check_binning(self) -> "CoincidenceHistogram":
        expected = bin_count(self.tau_min, self.tau_max, self.bin_width)
        if self.counts.size != expected:
            raise ValueError(f"Expected {expected} bins for the span, got {self.counts.size}")
        return self

    @property
    def n_bins(self) -> int:
        return int(self.counts.size)

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def tau_centers(self) -> np.ndarray:
        return self.tau_min + (np.arange(self.n_bins) + 0.5) * self.bin_width

    def same_binning(self, other: "CoincidenceHistogram") -> bool:
        return (
            self.bin_width == other.bin_width
            and self.tau_min == other.tau_min
            and self.tau_max == other.tau_max
        )

    def merge(self, other: "CoincidenceHistogram") -> "CoincidenceHistogram":
        """Bin-wise sum of two partial histograms"""
        if not self.same_binning(other):
            raise DomainError("Cannot merge histograms with different binning")
        return self.model_copy(update={"counts": self.counts + other.counts})


def bin_count(tau_min: float, tau_max: float, bin_width: float) -> int:
    """Number of bins covering the span; the span must be a whole number of bins"""
    if bin_width <= 0:
        raise DomainError(f"Bin width must be positive, got {bin_width}")
    if tau_max <= tau_min:
        raise DomainError(f"Empty histogram span [{tau_min}, {tau_max})")
    exact = (tau_max - tau_min) / bin_width
    n = int(round(exact))
    if n < 1 or abs(exact - n) > 1e-6:
        raise DomainError(f"Span {tau_max - tau_min} s is not a whole number of {bin_width} s bins")
    return n
