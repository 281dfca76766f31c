from enum import Enum

class WaveformKind(str, Enum):
    G2_UNNORMALIZED = "g2_unnormalized"
    P1_NORMALIZED = "p1_normalized"
    CONVOLVED = "convolved"
    HISTOGRAM_DENSITY = "histogram_density"

    @property
    def is_causal(self) -> bool:
        """Kinds produced straight from the kernel, zero for tau < 0"""
        return self in (WaveformKind.G2_UNNORMALIZED, WaveformKind.P1_NORMALIZED)
