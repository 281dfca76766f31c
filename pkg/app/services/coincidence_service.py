"""Seeded Monte Carlo model of the start-stop TCSPC record.

One SeedSequence per run is split into independent PCG64 streams for the
signal arrivals, the heralding draws, the background idlers and the timing
jitter, in that order. Timestamps are integer picoseconds.
"""
import logging
import math
from typing import Optional, Tuple

import numpy as np
from scipy.integrate import cumulative_trapezoid

from app.models.data_models.CoincidenceHistogram import CoincidenceHistogram, bin_count
from app.models.data_models.EventStream import EventStream
from app.models.data_models.McRates import McRates
from app.models.data_models.Waveform import NORMALIZATION_TOLERANCE, Waveform
from app.models.enums.Channel import Channel
from app.models.enums.WaveformKind import WaveformKind
from app.models.exceptions import (
    DegenerateInputError,
    DomainError,
    ExtractionError,
    InsufficientStatisticsError,
    RangeError,
)
from app.models.units import PS, seconds_to_ps
from app.services.analysis_service import (
    DEFAULT_ACCIDENTAL_MULTIPLE,
    FWHM_TO_SIGMA,
    fwhm,
    window_masks,
    window_mean,
)

logger = logging.getLogger(__name__)

STREAM_NAMES = ("signal", "herald", "background", "jitter")
# start-stop pairs expanded per histogram block
_PAIR_BLOCK = 4_000_000
PEAK_SIGNIFICANCE = 5.0
DEFAULT_PEAK_WINDOW_FWHM = 4.0


def spawn_generators(seed: int) -> dict:
    children = np.random.SeedSequence(seed).spawn(len(STREAM_NAMES))
    return {name: np.random.Generator(np.random.PCG64(child)) for name, child in zip(STREAM_NAMES, children)}


def sample_delays(p1: Waveform, uniforms: np.ndarray) -> np.ndarray:
    """Inverse-CDF draw from the tabulated density, linear CDF inside each grid segment"""
    cdf = cumulative_trapezoid(p1.values, dx=p1.tau_step, initial=0.0)
    targets = uniforms * cdf[-1]
    idx = np.clip(np.searchsorted(cdf, targets, side="right"), 1, cdf.size - 1)
    c0, c1 = cdf[idx - 1], cdf[idx]
    span = c1 - c0
    frac = np.divide(targets - c0, span, out=np.zeros_like(targets), where=span > 0)
    return p1.tau_start + (idx - 1 + np.clip(frac, 0.0, 1.0)) * p1.tau_step


def _jitter_ps(rng: np.random.Generator, sigma_ps: float, size: int) -> np.ndarray:
    if sigma_ps == 0 or size == 0:
        return np.zeros(size, dtype=np.int64)
    return np.rint(rng.normal(0.0, sigma_ps, size)).astype(np.int64)


def sample_events(rates: McRates, p1: Waveform, duration: float, seed: int) -> Tuple[EventStream, EventStream]:
    """Signal and idler detection streams for one acquisition"""
    area = p1.integral()
    if abs(area - 1.0) > NORMALIZATION_TOLERANCE:
        raise DegenerateInputError(f"The delay density must be normalized, integral is {area}")
    if duration < 0:
        raise DomainError(f"Duration must be nonnegative, got {duration}")
    rngs = spawn_generators(seed)
    duration_ps = seconds_to_ps(duration)

    n_signal = int(rngs["signal"].poisson(rates.signal_rate * duration)) if duration > 0 else 0
    signal = np.sort(rngs["signal"].integers(0, duration_ps, n_signal, endpoint=True))

    heralded = rngs["herald"].random(n_signal) < rates.heralding_probability
    n_pairs = int(heralded.sum())
    delays_ps = np.rint(sample_delays(p1, rngs["herald"].random(n_pairs)) / PS).astype(np.int64)
    correlated = signal[heralded] + delays_ps

    n_background = int(rngs["background"].poisson(rates.background_idler_rate * duration)) if duration > 0 else 0
    background = rngs["background"].integers(0, duration_ps, n_background, endpoint=True)

    # each channel carries half the variance of the start-stop jitter
    sigma_ps = rates.jitter_fwhm * FWHM_TO_SIGMA / math.sqrt(2.0) / PS
    signal = signal + _jitter_ps(rngs["jitter"], sigma_ps, n_signal)
    correlated = correlated + _jitter_ps(rngs["jitter"], sigma_ps, n_pairs)
    background = background + _jitter_ps(rngs["jitter"], sigma_ps, n_background)

    idler = np.concatenate([correlated, background])
    signal = np.sort(signal[(signal >= 0) & (signal <= duration_ps)])
    idler = np.sort(idler[(idler >= 0) & (idler <= duration_ps)])
    logger.info(
        f"Sampled {signal.size} signal and {idler.size} idler events "
        f"({n_pairs} heralded, {n_background} background) over {duration} s, seed {seed}"
    )
    return (
        EventStream(channel=Channel.SIGNAL, timestamps_ps=signal, duration=duration, seed=seed),
        EventStream(channel=Channel.IDLER, timestamps_ps=idler, duration=duration, seed=seed),
    )


def build_histogram(
    signal: EventStream, idler: EventStream, bin_width: float, span: Tuple[float, float]
) -> CoincidenceHistogram:
    """All start-stop pairs with tau = t_idler - t_signal in [span[0], span[1])"""
    n_bins = bin_count(span[0], span[1], bin_width)
    if signal.duration_ps != idler.duration_ps:
        raise DomainError(f"Streams cover different durations: {signal.duration} s vs {idler.duration} s")
    counts = np.zeros(n_bins, dtype=np.int64)
    starts = signal.timestamps_ps
    stops = idler.timestamps_ps
    if starts.size and stops.size:
        lo_ps, hi_ps, width_ps = span[0] / PS, span[1] / PS, bin_width / PS
        first = np.searchsorted(stops, starts + lo_ps, side="left")
        last = np.searchsorted(stops, starts + hi_ps, side="left")
        per_start = last - first
        boundaries = np.concatenate([[0], np.cumsum(per_start)])
        block_edges = np.searchsorted(boundaries, np.arange(0, boundaries[-1], _PAIR_BLOCK), side="right") - 1
        block_edges = np.append(np.unique(block_edges), starts.size)
        for b0, b1 in zip(block_edges[:-1], block_edges[1:]):
            n = per_start[b0:b1]
            total = int(n.sum())
            if total == 0:
                continue
            owner = np.repeat(np.arange(b0, b1), n)
            offset = np.arange(total) - np.repeat(np.cumsum(n) - n, n)
            delays = stops[first[owner] + offset] - starts[owner]
            bins = np.floor((delays - lo_ps) / width_ps).astype(np.int64)
            counts += np.bincount(np.clip(bins, 0, n_bins - 1), minlength=n_bins)
    hist = CoincidenceHistogram(bin_width=bin_width, tau_min=span[0], tau_max=span[1], counts=counts)
    logger.debug(f"Histogrammed {hist.total} start-stop pairs into {n_bins} bins")
    return hist


def _default_peak_window(hist: CoincidenceHistogram) -> float:
    baseline = float(np.median(hist.counts))
    excess = np.clip(hist.counts - baseline, 0.0, None)
    if not np.any(excess > 0):
        raise InsufficientStatisticsError("No coincidence peak above the median background")
    shape = Waveform(tau_start=float(hist.tau_centers[0]), tau_step=hist.bin_width,
                     values=excess, kind=WaveformKind.HISTOGRAM_DENSITY)
    try:
        return DEFAULT_PEAK_WINDOW_FWHM * fwhm(shape)
    except ExtractionError as exc:
        raise InsufficientStatisticsError(f"Cannot locate the coincidence peak: {exc.detail}") from exc


def estimate_p1(
    hist: CoincidenceHistogram,
    peak_window: Optional[float] = None,
    accidental_multiple: float = DEFAULT_ACCIDENTAL_MULTIPLE,
) -> Waveform:
    """Background-subtracted, unit-mass delay density from a coincidence histogram"""
    if hist.total == 0:
        raise InsufficientStatisticsError("Histogram has no counts")
    centers = hist.tau_centers
    if hist.n_bins == 1:
        return Waveform(tau_start=float(centers[0]), tau_step=hist.bin_width,
                        values=[1.0 / hist.bin_width], kind=WaveformKind.HISTOGRAM_DENSITY)
    if peak_window is None:
        peak_window = _default_peak_window(hist)
    counts = hist.counts.astype(np.float64)
    peak = int(np.argmax(counts))
    _, accidental = window_masks(hist.n_bins, peak, hist.bin_width, peak_window, accidental_multiple)
    if accidental.any():
        floor = float(counts[accidental].mean())
    else:
        logger.warning("No accidental region inside the histogram span; assuming zero background")
        floor = 0.0
    height = counts[peak] - floor
    if height <= PEAK_SIGNIFICANCE * math.sqrt(max(floor, 1.0)):
        raise InsufficientStatisticsError(
            f"Peak excess {height:.1f} is below {PEAK_SIGNIFICANCE} sigma of the floor {floor:.1f}"
        )
    net = np.clip(counts - floor, 0.0, None)
    density = net / (net.sum() * hist.bin_width)
    return Waveform(tau_start=float(centers[0]), tau_step=hist.bin_width, values=density,
                    kind=WaveformKind.HISTOGRAM_DENSITY)


def operating_point(
    pair_rate: float,
    target_car: float,
    heralding_probability: float,
    p1: Waveform,
    peak_window: float,
    jitter_fwhm: float = 100e-12,
) -> McRates:
    """Rates that give the requested detected pair rate and analytic CAR"""
    if not 0 < heralding_probability <= 1:
        raise RangeError(f"Heralding probability must lie in (0, 1], got {heralding_probability}")
    if target_car <= 1:
        raise RangeError(f"Target CAR must exceed 1, got {target_car}")
    signal_rate = pair_rate / heralding_probability
    idler_rate = heralding_probability * window_mean(p1, peak_window) / (target_car - 1.0)
    background = idler_rate - pair_rate
    if background < 0:
        raise RangeError(
            f"CAR {target_car} is out of reach at {pair_rate:.3e} pairs/s: "
            f"correlated idlers alone exceed the allowed idler rate {idler_rate:.3e} /s"
        )
    rates = McRates(signal_rate=signal_rate, heralding_probability=heralding_probability,
                    background_idler_rate=background, jitter_fwhm=jitter_fwhm)
    logger.info(
        f"Operating point: R_s={signal_rate:.4e} /s, R_b={background:.4e} /s for "
        f"{pair_rate:.3e} pairs/s at CAR {target_car}"
    )
    return rates
