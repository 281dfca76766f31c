from enum import Enum

class EmissionRegime(str, Enum):
    DILUTE = "dilute"
    SUBWAVELENGTH = "subwavelength"
    PRONOUNCED = "pronounced"
