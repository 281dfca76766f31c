from enum import Enum

class QuadratureScheme(str, Enum):
    GAUSS_LEGENDRE = "gauss-legendre"
    TRAPEZOID = "trapezoid"
