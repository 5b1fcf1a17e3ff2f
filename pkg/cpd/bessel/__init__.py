"""Integer-order Bessel functions, their integral identity and Landau envelope."""

from .envelope import LandauPoint, LandauReport, landau_envelope_check
from .functions import (
    LANDAU_CONSTANT,
    BesselRow,
    bessel_j,
    bessel_j_signed,
    bessel_row,
    miller_start,
    power_series_j,
)
from .quadrature import bessel_integral_oracle, required_nodes

__all__ = [
    "LANDAU_CONSTANT",
    "BesselRow",
    "bessel_j",
    "bessel_j_signed",
    "bessel_row",
    "miller_start",
    "power_series_j",
    "bessel_integral_oracle",
    "required_nodes",
    "LandauPoint",
    "LandauReport",
    "landau_envelope_check",
]
