from enum import Enum

class Channel(str, Enum):
    SIGNAL = "signal"
    IDLER = "idler"

    @property
    def code(self) -> int:
        """Byte code used by the packed binary event format"""
        return 0 if self is Channel.SIGNAL else 1

    @classmethod
    def from_code(cls, code: int) -> "Channel":
        if code == 0:
            return cls.SIGNAL
        if code == 1:
            return cls.IDLER
        raise ValueError(f"Unknown channel code {code}")
