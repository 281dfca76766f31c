from enum import Enum

class McMode(str, Enum):
    OPERATING_POINT = "operating-point"
    RATES = "rates"
