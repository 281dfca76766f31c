"""Detector response and scalar figures of merit for heralded-idler waveforms."""
import logging
import math
from typing import Optional, Tuple

import numpy as np

from app.models.data_models.CoincidenceHistogram import CoincidenceHistogram
from app.models.data_models.DetectionModel import DetectionModel
from app.models.data_models.McRates import McRates
from app.models.data_models.Waveform import Waveform
from app.models.enums.WaveformKind import WaveformKind
from app.models.exceptions import (
    DegenerateInputError,
    DomainError,
    ExtractionError,
    ResolutionError,
)

logger = logging.getLogger(__name__)

FWHM_TO_SIGMA = 1.0 / (2.0 * math.sqrt(2.0 * math.log(2.0)))
KERNEL_HALF_WIDTH_SIGMAS = 4.0
AREA_TOLERANCE = 1e-4
DEFAULT_ACCIDENTAL_MULTIPLE = 5.0


def gaussian_kernel(jitter_fwhm: float, step: float) -> np.ndarray:
    """Sampled Gaussian of the given FWHM, odd length, unit discrete sum"""
    sigma = jitter_fwhm * FWHM_TO_SIGMA
    half = int(math.ceil(KERNEL_HALF_WIDTH_SIGMAS * sigma / step))
    offsets = np.arange(-half, half + 1) * step
    kernel = np.exp(-0.5 * (offsets / sigma) ** 2)
    return kernel / kernel.sum()


def convolve_jitter(w: Waveform, jitter_fwhm: float) -> Waveform:
    """Convolve with a unit-area Gaussian timing response on the same grid.

    Samples outside the grid are taken as zero. Mass pushed past either end of
    the grid is measured, and more than AREA_TOLERANCE of it is a ResolutionError.
    """
    if jitter_fwhm < 0:
        raise DomainError(f"Jitter FWHM must be nonnegative, got {jitter_fwhm}")
    if jitter_fwhm == 0:
        return w.with_values(w.values.copy(), WaveformKind.CONVOLVED)
    if w.tau_step > 0.5 * jitter_fwhm:
        raise ResolutionError(
            f"Bin width {w.tau_step:.3e} s is coarser than half the jitter FWHM {jitter_fwhm:.3e} s"
        )
    kernel = gaussian_kernel(jitter_fwhm, w.tau_step)
    half = (kernel.size - 1) // 2
    full = np.convolve(w.values, kernel, mode="full")
    smoothed = full[half:half + w.values.size]
    total = float(full.sum())
    if total > 0:
        lost = 1.0 - float(smoothed.sum()) / total
        if lost > AREA_TOLERANCE:
            raise ResolutionError(
                f"Jitter convolution pushes {lost:.2e} of the area off the grid "
                f"[{w.tau_start:.3e}, {w.tau_end:.3e}] s; pad the span by {3.0 * jitter_fwhm * FWHM_TO_SIGMA:.3e} s "
                f"on each side"
            )
    return w.with_values(np.clip(smoothed, 0.0, None), WaveformKind.CONVOLVED)


def fwhm(w: Waveform) -> float:
    """Full width at half maximum with linear interpolation on both flanks"""
    values = w.values
    peak = int(np.argmax(values))
    peak_value = float(values[peak])
    if not peak_value > 0:
        raise DegenerateInputError("FWHM needs a waveform with a positive maximum")
    half = 0.5 * peak_value
    above = np.flatnonzero(values >= half)
    first, last = int(above[0]), int(above[-1])
    if first == 0:
        raise ExtractionError("No half-maximum crossing on the left of the peak", side="left")
    if last == values.size - 1:
        raise ExtractionError("No half-maximum crossing on the right of the peak", side="right")
    lo, hi = values[first - 1], values[first]
    if w.kind.is_causal and lo == 0.0 and abs(w.tau_start + first * w.tau_step) < 0.5 * w.tau_step:
        # leading edge of a causal waveform is the step at tau = 0
        left = float(first)
    else:
        left = (first - 1) + (half - lo) / (hi - lo)
    hi, lo = values[last], values[last + 1]
    right = last + (hi - half) / (hi - lo)
    return float((right - left) * w.tau_step)


def window_masks(
    n_bins: int, peak_index: int, bin_width: float, peak_window: float,
    accidental_multiple: float = DEFAULT_ACCIDENTAL_MULTIPLE,
) -> Tuple[np.ndarray, np.ndarray]:
    """Peak window centred on peak_index and the accidental region beyond accidental_multiple windows"""
    if not peak_window > 0:
        raise DomainError(f"Peak window must be positive, got {peak_window}")
    offset = np.abs(np.arange(n_bins) - peak_index) * bin_width
    in_peak = offset <= 0.5 * peak_window * (1.0 + 1e-9)
    accidental = offset > accidental_multiple * peak_window
    return in_peak, accidental


def _window_sums(hist: CoincidenceHistogram, peak_window: float, accidental_multiple: float):
    counts = hist.counts
    in_peak, accidental = window_masks(
        hist.n_bins, int(np.argmax(counts)), hist.bin_width, peak_window, accidental_multiple
    )
    return counts[in_peak], counts[accidental]


def car_with_uncertainty(
    hist: CoincidenceHistogram, peak_window: float, accidental_multiple: float = DEFAULT_ACCIDENTAL_MULTIPLE
) -> Tuple[float, float]:
    """Coincidence-to-accidental ratio and its Poisson standard error"""
    if hist.n_bins == 0 or hist.total == 0:
        raise DegenerateInputError("CAR of an empty histogram is undefined")
    peak_counts, accidental_counts = _window_sums(hist, peak_window, accidental_multiple)
    if accidental_counts.size == 0:
        raise DegenerateInputError(
            f"No bins further than {accidental_multiple} peak windows from the peak; widen the span"
        )
    peak_total = int(peak_counts.sum())
    accidental_total = int(accidental_counts.sum())
    if accidental_total == 0:
        return math.inf, 0.0
    ratio = (peak_total / peak_counts.size) / (accidental_total / accidental_counts.size)
    if peak_total == 0:
        return ratio, 0.0
    return ratio, ratio * math.sqrt(1.0 / peak_total + 1.0 / accidental_total)


def car(hist: CoincidenceHistogram, peak_window: float, accidental_multiple: float = DEFAULT_ACCIDENTAL_MULTIPLE) -> float:
    return car_with_uncertainty(hist, peak_window, accidental_multiple)[0]


def net_window_counts(
    hist: CoincidenceHistogram, peak_window: float, accidental_multiple: float = DEFAULT_ACCIDENTAL_MULTIPLE
) -> float:
    """Window coincidences minus the accidental floor, never negative"""
    if hist.total == 0:
        return 0.0
    peak_counts, accidental_counts = _window_sums(hist, peak_window, accidental_multiple)
    if accidental_counts.size:
        floor = accidental_counts.sum() / accidental_counts.size
    else:
        logger.warning("No accidental region in the histogram span; background not subtracted")
        floor = 0.0
    return max(0.0, float(peak_counts.sum() - peak_counts.size * floor))


def pair_rate(
    hist: CoincidenceHistogram,
    acquisition: float,
    peak_window: float,
    detection: Optional[DetectionModel] = None,
    corrected: bool = False,
    accidental_multiple: float = DEFAULT_ACCIDENTAL_MULTIPLE,
) -> float:
    """Background-subtracted pairs per second, optionally divided by both detector efficiencies"""
    if not acquisition > 0:
        raise DomainError(f"Acquisition time must be positive, got {acquisition}")
    rate = net_window_counts(hist, peak_window, accidental_multiple) / acquisition
    if corrected:
        detection = detection or DetectionModel()
        if detection.pair_efficiency == 0:
            raise DegenerateInputError("Cannot correct for zero detection efficiency")
        rate /= detection.pair_efficiency
    return rate


def heralding_efficiency(
    hist: CoincidenceHistogram,
    signal_count: int,
    peak_window: float,
    efficiency_idler: Optional[float] = None,
    accidental_multiple: float = DEFAULT_ACCIDENTAL_MULTIPLE,
) -> float:
    """Net heralded idlers per detected signal; efficiency_idler undoes the idler detector loss"""
    if signal_count <= 0:
        raise DegenerateInputError("Heralding efficiency needs at least one signal event")
    value = net_window_counts(hist, peak_window, accidental_multiple) / signal_count
    if efficiency_idler is not None:
        if efficiency_idler <= 0:
            raise DegenerateInputError("Idler efficiency must be positive to correct for it")
        value /= efficiency_idler
    return value


def window_mean(p1: Waveform, peak_window: float) -> float:
    """Mean density of P1 over the samples inside the window centred on its maximum"""
    in_peak, _ = window_masks(len(p1), p1.peak_index(), p1.tau_step, peak_window)
    return float(p1.values[in_peak].mean())


def predicted_car(p1: Waveform, rates: McRates, peak_window: float) -> float:
    """Analytic CAR: 1 + p_h <P1>_window / R_idler"""
    idler_rate = rates.idler_singles_rate
    if idler_rate == 0:
        return math.inf
    return 1.0 + rates.heralding_probability * window_mean(p1, peak_window) / idler_rate
