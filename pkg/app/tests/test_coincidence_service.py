import numpy as np
import pytest

from app.models.data_models.CoincidenceHistogram import CoincidenceHistogram
from app.models.data_models.EventStream import EventStream
from app.models.data_models.McRates import McRates
from app.models.data_models.Waveform import Waveform
from app.models.enums.Channel import Channel
from app.models.enums.WaveformKind import WaveformKind
from app.models.exceptions import DegenerateInputError, DomainError, InsufficientStatisticsError, RangeError
from app.services.analysis_service import car, fwhm, pair_rate, predicted_car, window_masks
from app.services.coincidence_service import (
    build_histogram,
    estimate_p1,
    operating_point,
    sample_delays,
    sample_events,
    spawn_generators,
)

BIN = 5e-12
# bin centres fall on the 5 ps waveform grid from -1 ns to 5 ns
ALIGNED_SPAN = (-1002.5e-12, 5002.5e-12)


def box_density(scale: float = 1.0) -> Waveform:
    """Uniform delay density on [0, 1] ns"""
    return Waveform(tau_start=0.0, tau_step=1e-12, values=np.full(1001, scale * 1e9), kind=WaveformKind.CONVOLVED)


def simulate(p1: Waveform, rates: McRates, duration: float, seed: int, span=ALIGNED_SPAN) -> CoincidenceHistogram:
    signal, idler = sample_events(rates, p1, duration, seed)
    return build_histogram(signal, idler, BIN, span)


def l1_distance(estimate: Waveform, p1: Waveform) -> float:
    assert len(estimate) == len(p1)
    return float(np.abs(estimate.values - p1.values).sum() * p1.tau_step)


def test_generators_are_reproducible_and_independent():
    """Test that one seed always yields the same streams and the streams differ"""
    first = spawn_generators(42)
    second = spawn_generators(42)
    draws = {name: rng.random(4) for name, rng in first.items()}
    for name, rng in second.items():
        np.testing.assert_array_equal(rng.random(4), draws[name])
    assert not np.array_equal(draws["signal"], draws["herald"])


def test_inverse_cdf_of_uniform_density():
    """Test that a flat density maps uniforms linearly onto its support"""
    uniforms = np.linspace(0.0, 1.0, 11)
    np.testing.assert_allclose(sample_delays(box_density(), uniforms), uniforms * 1e-9, atol=1e-18)


def test_sample_events_is_deterministic(hot_p1_convolved):
    """Test that the same seed reproduces both streams and another seed does not"""
    rates = McRates(signal_rate=1e5, heralding_probability=0.5, background_idler_rate=1e4)
    a_signal, a_idler = sample_events(rates, hot_p1_convolved, 0.01, 42)
    b_signal, b_idler = sample_events(rates, hot_p1_convolved, 0.01, 42)
    c_signal, _ = sample_events(rates, hot_p1_convolved, 0.01, 43)
    np.testing.assert_array_equal(a_signal.timestamps_ps, b_signal.timestamps_ps)
    np.testing.assert_array_equal(a_idler.timestamps_ps, b_idler.timestamps_ps)
    assert not np.array_equal(a_signal.timestamps_ps, c_signal.timestamps_ps)


def test_sample_events_streams(hot_p1_convolved):
    """Test channel labels, ordering, duration bounds and expected counts of the streams"""
    rates = McRates(signal_rate=1e5, heralding_probability=0.5, background_idler_rate=1e4)
    signal, idler = sample_events(rates, hot_p1_convolved, 0.1, 7)
    assert signal.channel == Channel.SIGNAL and idler.channel == Channel.IDLER
    assert signal.seed == idler.seed == 7
    for stream in (signal, idler):
        assert np.all(np.diff(stream.timestamps_ps) >= 0)
        assert stream.timestamps_ps.min() >= 0
        assert stream.timestamps_ps.max() <= stream.duration_ps
    assert len(signal) == pytest.approx(1e4, rel=0.05)
    assert len(idler) == pytest.approx(6e3, rel=0.07)


def test_sample_events_without_rates(hot_p1_convolved):
    """Test that zero rates give empty streams"""
    rates = McRates(signal_rate=0.0, heralding_probability=0.5, background_idler_rate=0.0)
    signal, idler = sample_events(rates, hot_p1_convolved, 0.1, 1)
    assert len(signal) == len(idler) == 0


def test_sample_events_rejects_bad_input():
    """Test that an unnormalized density and a negative duration are rejected"""
    rates = McRates(signal_rate=1e3, heralding_probability=0.5, background_idler_rate=0.0)
    with pytest.raises(DegenerateInputError):
        sample_events(rates, box_density(2.0), 0.1, 1)
    with pytest.raises(DomainError):
        sample_events(rates, box_density(), -1.0, 1)


def test_build_histogram_by_hand():
    """Test that every start-stop pair inside the span lands in its bin"""
    signal = EventStream(channel=Channel.SIGNAL, timestamps_ps=[0, 1000], duration=1e-8)
    idler = EventStream(channel=Channel.IDLER, timestamps_ps=[550, 1230, 5000], duration=1e-8)
    hist = build_histogram(signal, idler, 1e-10, (-1e-9, 1e-9))
    expected = np.zeros(20, dtype=np.int64)
    # delays 550, 230 and -450 ps
    expected[[15, 12, 5]] = 1
    np.testing.assert_array_equal(hist.counts, expected)


def test_build_histogram_rejects_mismatched_streams():
    """Test that streams of different acquisition length cannot be correlated"""
    signal = EventStream(channel=Channel.SIGNAL, timestamps_ps=[0], duration=1e-8)
    idler = EventStream(channel=Channel.IDLER, timestamps_ps=[10], duration=2e-8)
    with pytest.raises(DomainError):
        build_histogram(signal, idler, 1e-10, (-1e-9, 1e-9))
    with pytest.raises(DomainError):
        build_histogram(signal, signal, 0.0, (-1e-9, 1e-9))


def test_merge_histograms():
    """Test bin-wise merging and rejection of different binning"""
    a = CoincidenceHistogram(bin_width=1e-10, tau_min=0.0, tau_max=1e-9, counts=np.arange(10))
    b = CoincidenceHistogram(bin_width=1e-10, tau_min=0.0, tau_max=1e-9, counts=np.ones(10))
    np.testing.assert_array_equal(a.merge(b).counts, np.arange(10) + 1)
    other = CoincidenceHistogram(bin_width=1e-10, tau_min=-1e-9, tau_max=0.0, counts=np.ones(10))
    with pytest.raises(DomainError):
        a.merge(other)


def test_estimate_p1_edge_cases():
    """Test single-bin, empty and peakless histograms"""
    single = CoincidenceHistogram(bin_width=1e-10, tau_min=0.0, tau_max=1e-10, counts=[7])
    assert estimate_p1(single).integral() == pytest.approx(1.0)
    empty = CoincidenceHistogram(bin_width=1e-10, tau_min=0.0, tau_max=1e-9, counts=np.zeros(10))
    with pytest.raises(InsufficientStatisticsError):
        estimate_p1(empty)
    flat = CoincidenceHistogram(bin_width=1e-10, tau_min=0.0, tau_max=1e-8, counts=np.full(100, 10))
    with pytest.raises(InsufficientStatisticsError):
        estimate_p1(flat)


def test_estimated_p1_matches_generator(hot_p1_convolved):
    """Test that a million pairs reproduce the generating density to a small L1 distance"""
    rates = McRates(signal_rate=1e6, heralding_probability=1.0, background_idler_rate=0.0, jitter_fwhm=0.0)
    estimate = estimate_p1(simulate(hot_p1_convolved, rates, 1.0, 42))
    assert estimate.kind == WaveformKind.HISTOGRAM_DENSITY
    assert estimate.integral() == pytest.approx(1.0, rel=1e-9)
    np.testing.assert_allclose(estimate.tau, hot_p1_convolved.tau, atol=1e-18)
    assert l1_distance(estimate, hot_p1_convolved) < 0.02


def test_estimate_converges_with_pair_count(hot_p1_convolved):
    """Test that four times the pairs roughly halves the L1 error"""
    def mean_l1(signal_rate):
        rates = McRates(signal_rate=signal_rate, heralding_probability=1.0,
                        background_idler_rate=0.0, jitter_fwhm=0.0)
        return np.mean([
            l1_distance(estimate_p1(simulate(hot_p1_convolved, rates, 1.0, seed)), hot_p1_convolved)
            for seed in range(10)
        ])

    ratio = mean_l1(2.5e4) / mean_l1(1e5)
    assert 1.5 <= ratio <= 2.6


def test_simulated_car_matches_prediction(hot_p1_convolved):
    """Test that the Monte Carlo CAR averages to the analytic prediction"""
    rates = McRates(signal_rate=1e6, heralding_probability=0.22, background_idler_rate=2e5, jitter_fwhm=0.0)
    window = 4.0 * fwhm(hot_p1_convolved)
    predicted = predicted_car(hot_p1_convolved, rates, window)
    ratios = [car(simulate(hot_p1_convolved, rates, 1.0, seed, span=(-10e-9, 10e-9)), window) for seed in range(10)]
    margin = 3.0 * np.std(ratios, ddof=1) / np.sqrt(len(ratios)) + 0.01 * predicted
    assert abs(np.mean(ratios) - predicted) <= margin


def test_operating_point_is_reproduced(hot_waveform):
    """Test that the solved rates give CAR 200 and the requested pair rate in simulation"""
    p1 = hot_waveform.p1_convolved
    window = 4.0 * hot_waveform.fwhm_post_jitter
    rates = operating_point(1e6, 200.0, 0.22, p1, window, 100e-12)
    assert rates.signal_rate == pytest.approx(1e6 / 0.22)
    assert predicted_car(p1, rates, window) == pytest.approx(200.0, rel=1e-9)

    hist = simulate(hot_waveform.p1_raw, rates, 0.2, 42, span=(-20e-9, 20e-9))
    in_window, _ = window_masks(len(p1), p1.peak_index(), p1.tau_step, window)
    window_mass = float(p1.values[in_window].sum() * p1.tau_step)
    assert car(hist, window) == pytest.approx(200.0, rel=0.05)
    assert pair_rate(hist, 0.2, window) == pytest.approx(1e6 * window_mass, rel=0.03)


def test_operating_point_infeasible(hot_waveform):
    """Test that unreachable targets are range errors"""
    p1 = hot_waveform.p1_convolved
    window = 4.0 * hot_waveform.fwhm_post_jitter
    with pytest.raises(RangeError):
        operating_point(1e6, 1e9, 0.22, p1, window)
    with pytest.raises(RangeError):
        operating_point(1e6, 200.0, 0.0, p1, window)
    with pytest.raises(RangeError):
        operating_point(1e6, 1.0, 0.22, p1, window)


def test_simulated_jitter_matches_convolution(hot_waveform):
    """Test that timestamp jitter in the sampler widens P1 like the analytic convolution"""
    rates = McRates(signal_rate=1e6, heralding_probability=1.0, background_idler_rate=0.0, jitter_fwhm=100e-12)
    estimate = estimate_p1(simulate(hot_waveform.p1_raw, rates, 1.0, 42))
    assert fwhm(estimate) == pytest.approx(hot_waveform.fwhm_post_jitter, rel=0.04)


def test_accidental_floor_matches_rate_product():
    """Test that uncorrelated streams fill each bin with R_signal * R_idler * bin * T counts"""
    rates = McRates(signal_rate=1e5, heralding_probability=0.0, background_idler_rate=1e5, jitter_fwhm=0.0)
    duration = 1.0
    signal, idler = sample_events(rates, box_density(), duration, 11)
    for stream in (signal, idler):
        assert stream.seconds.min() >= 0.0 and stream.seconds.max() <= duration
    hist = build_histogram(signal, idler, 1e-9, (-500e-9, 500e-9))
    expected = rates.signal_rate * rates.idler_singles_rate * 1e-9 * duration
    sigma = np.sqrt(expected / hist.n_bins)
    assert abs(hist.counts.mean() - expected) <= 3.0 * sigma
