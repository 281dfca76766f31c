import logging
import math
from typing import List, Optional

import numpy as np
from scipy.optimize import bisect

from app.models.data_models.DecayRates import DecayRates
from app.models.data_models.DetectionModel import DetectionModel
from app.models.data_models.DriveParams import DriveParams
from app.models.data_models.FitResult import FitResult
from app.models.data_models.QuadratureSpec import QuadratureSpec
from app.models.data_models.StrengthPoint import StrengthPoint
from app.models.data_models.Waveform import Waveform
from app.models.exceptions import DegenerateInputError, NumericError, RangeError
from app.services.analysis_service import convolve_jitter, fwhm
from app.services.biphoton_service import normalized_waveform, tau_grid, velocity_integral

logger = logging.getLogger(__name__)

# widths are matched to well below a picosecond
WIDTH_TOLERANCE = 1e-12
MAX_STRENGTH = 1e6
INITIAL_UPPER_STRENGTH = 512.0


class StrengthService:
    """Forward width model at fixed drive and thermal speed.

    The velocity integral is computed once; every strength evaluation only
    re-applies the collective decay, normalizes and convolves with the jitter.
    """

    def __init__(
        self,
        drive: DriveParams,
        rates: DecayRates,
        u: float,
        detection: DetectionModel,
        quad: Optional[QuadratureSpec] = None,
        tau: Optional[np.ndarray] = None,
    ):
        self.rates = rates
        self.detection = detection
        if tau is None:
            tau = tau_grid(detection.span_min, detection.span_max, detection.bin_width)
        self.integral = velocity_integral(tau, drive, rates, u, quad)

    def p1(self, strength: float) -> Waveform:
        """Normalized, unconvolved P1 at Gamma_SR = strength * Gamma_I"""
        return normalized_waveform(self.integral.g2(strength * self.rates.gamma_idler))

    def p1_convolved(self, strength: float) -> Waveform:
        return convolve_jitter(self.p1(strength), self.detection.jitter_fwhm)

    def fwhm_at_strength(self, strength: float) -> float:
        return fwhm(self.p1_convolved(strength))

    def extract_strength(self, measured_fwhm: float) -> float:
        """Strength whose jitter-convolved width equals the measured width"""
        width_at_one = self.fwhm_at_strength(1.0)
        if measured_fwhm >= width_at_one:
            if measured_fwhm - width_at_one <= 1e-3 * WIDTH_TOLERANCE:
                return 1.0
            raise RangeError(
                f"Measured width {measured_fwhm * 1e9:.4f} ns exceeds the width without "
                f"superradiance, {width_at_one * 1e9:.4f} ns"
            )
        if measured_fwhm <= self.detection.jitter_fwhm:
            raise RangeError(
                f"Measured width {measured_fwhm * 1e9:.4f} ns is below the "
                f"{self.detection.jitter_fwhm * 1e9:.4f} ns detection jitter floor"
            )
        upper = INITIAL_UPPER_STRENGTH
        while self.fwhm_at_strength(upper) > measured_fwhm:
            upper *= 2.0
            if upper > MAX_STRENGTH:
                raise RangeError(f"Measured width {measured_fwhm * 1e9:.4f} ns is not reached below strength {MAX_STRENGTH:g}")
        strength = bisect(
            lambda s: self.fwhm_at_strength(s) - measured_fwhm,
            1.0,
            upper,
            xtol=1e-9,
            rtol=1e-12,
            maxiter=500,
        )
        mismatch = abs(self.fwhm_at_strength(strength) - measured_fwhm)
        if mismatch >= WIDTH_TOLERANCE:
            raise NumericError(f"Strength inversion missed the width by {mismatch * 1e12:.3f} ps")
        logger.debug(f"Width {measured_fwhm * 1e9:.4f} ns -> strength {strength:.4f}")
        return float(strength)


def extract_strength(
    measured_fwhm: float,
    drive: DriveParams,
    rates: DecayRates,
    u: float,
    detection: DetectionModel,
    quad: Optional[QuadratureSpec] = None,
) -> float:
    return StrengthService(drive, rates, u, detection, quad).extract_strength(measured_fwhm)


def fit_mu(points: List[StrengthPoint]) -> FitResult:
    """Least squares of strength - 1 = mu * N through the origin"""
    if not points:
        raise DegenerateInputError("fit_mu needs at least one point")
    n = np.array([p.atom_count for p in points], dtype=np.float64)
    y = np.array([p.strength for p in points], dtype=np.float64) - 1.0
    sxx = float(np.dot(n, n))
    if sxx == 0:
        raise DegenerateInputError("All points have zero atom count; mu is undetermined")
    mu = float(np.dot(n, y)) / sxx
    residuals = y - mu * n
    if len(points) > 1:
        stderr = math.sqrt(float(np.dot(residuals, residuals)) / (len(points) - 1) / sxx)
    else:
        stderr = 0.0
    logger.info(f"Fitted mu = {mu:.4e} +/- {stderr:.2e} from {len(points)} points")
    return FitResult(mu=mu, mu_stderr=stderr, residuals=residuals.tolist(), n_points=len(points))
