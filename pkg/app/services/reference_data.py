"""Measured cell temperature, optical depth and r_SR / lambda_I, with one-digit uncertainties."""
from typing import List

from app.models.data_models.ReferenceRow import ReferenceRow

_ROWS = [
    # temperature_c, OD, dOD, r/lambda, d(r/lambda)
    (21.0, 0.06, 0.01, 2.04, 0.15),
    (29.0, 0.14, 0.01, 1.55, 0.05),
    (37.0, 0.29, 0.02, 1.21, 0.04),
    (49.0, 0.76, 0.06, 0.86, 0.03),
    (57.0, 1.5, 0.1, 0.70, 0.03),
    (65.0, 2.7, 0.2, 0.57, 0.02),
    (76.0, 5.6, 0.4, 0.44, 0.01),
    (87.0, 12.0, 1.0, 0.34, 0.01),
    (95.0, 20.0, 2.0, 0.29, 0.01),
]

REFERENCE_TABLE: List[ReferenceRow] = [
    ReferenceRow(
        temperature_c=t,
        optical_depth=od,
        optical_depth_uncertainty=d_od,
        r_sr_over_lambda=ratio,
        r_sr_over_lambda_uncertainty=d_ratio,
    )
    for t, od, d_od, ratio, d_ratio in _ROWS
]

# measured post-jitter widths at the ends of the temperature range, seconds
MEASURED_FWHM_COLD = 0.60e-9
MEASURED_FWHM_HOT = 0.17e-9
