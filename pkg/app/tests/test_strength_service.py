import math

import numpy as np
import pytest

from app.models.data_models.StrengthPoint import StrengthPoint
from app.models.exceptions import DegenerateInputError, RangeError
from app.models.service_classes.StrengthService import extract_strength, fit_mu
from app.services.analysis_service import fwhm
from app.services.reference_data import MEASURED_FWHM_COLD, MEASURED_FWHM_HOT

MU = 1.15e-6


def test_cold_width_matches_measurement(cold_model, cold_state):
    """Test that the 21 °C forward model gives about 0.60 ns after jitter"""
    strength = 1.0 + MU * cold_state.atom_count
    assert strength == pytest.approx(1.731, rel=3e-3)
    assert cold_model.fwhm_at_strength(strength) == pytest.approx(MEASURED_FWHM_COLD, rel=0.25)


def test_hot_width_matches_measurement(hot_model, hot_state):
    """Test that the 95 °C forward model gives about 0.17 ns after jitter"""
    strength = 1.0 + MU * hot_state.atom_count
    assert hot_model.fwhm_at_strength(strength) == pytest.approx(MEASURED_FWHM_HOT, rel=0.15)


def test_hot_width_before_jitter_follows_collective_decay(hot_model, hot_state):
    """Test that the unconvolved 95 °C width sits at ln2 / Gamma_SR"""
    strength = 1.0 + MU * hot_state.atom_count
    gamma_sr = strength * hot_model.rates.gamma_idler
    width = fwhm(hot_model.p1(strength))
    assert 0.8 * math.log(2.0) / gamma_sr <= width <= math.log(2.0) / gamma_sr * (1.0 + 2e-3)


def test_width_decreases_with_strength(hot_model):
    """Test that the convolved width falls monotonically towards the jitter floor"""
    widths = [hot_model.fwhm_at_strength(s) for s in (1.0, 2.0, 5.0, 20.0, 100.0, 400.0)]
    assert all(a > b for a, b in zip(widths, widths[1:]))
    assert widths[-1] > hot_model.detection.jitter_fwhm


def test_width_decreases_on_dense_strength_grid(hot_model):
    """Test that the convolved width falls at every one of 20 strengths spaced evenly in log between 1 and 400"""
    widths = [hot_model.fwhm_at_strength(s) for s in np.geomspace(1.0, 400.0, 20)]
    assert all(a > b for a, b in zip(widths, widths[1:]))


def test_extract_strength_round_trip(hot_model):
    """Test that inverting the forward model recovers the strength that produced a width"""
    for strength in (2.0, 37.0, 251.0):
        assert hot_model.extract_strength(hot_model.fwhm_at_strength(strength)) == pytest.approx(strength, rel=1e-6)


def test_extract_strength_at_unit_strength(hot_model):
    """Test that the width without enhancement maps to strength 1"""
    assert hot_model.extract_strength(hot_model.fwhm_at_strength(1.0)) == 1.0


def test_extract_strength_from_measured_hot_width(hot_model):
    """Test that the measured 0.17 ns width implies a strength of a few hundred"""
    assert 150.0 <= hot_model.extract_strength(MEASURED_FWHM_HOT) <= 350.0


def test_extract_strength_out_of_range(hot_model):
    """Test that widths above the unenhanced width or below the jitter floor are rejected"""
    with pytest.raises(RangeError):
        hot_model.extract_strength(hot_model.fwhm_at_strength(1.0) * 1.1)
    with pytest.raises(RangeError):
        hot_model.extract_strength(0.09e-9)


def test_module_level_extract_strength(config, hot_state):
    """Test that the functional form builds the same forward model"""
    strength = extract_strength(
        0.2e-9,
        config.drive.to_drive(),
        config.base_rates(),
        hot_state.u,
        config.detection.to_detection(),
        config.quadrature.to_quadrature(),
    )
    assert strength > 1.0


def test_fit_mu_noiseless():
    """Test that exact synthetic strengths return mu to rounding precision"""
    atom_counts = np.linspace(2e7, 2.2e8, 9)
    points = [StrengthPoint(atom_count=n, strength=1.0 + MU * n) for n in atom_counts]
    result = fit_mu(points)
    assert result.mu == pytest.approx(MU, rel=1e-10)
    assert result.n_points == 9
    assert result.mu_stderr == pytest.approx(0.0, abs=1e-15)


def test_fit_mu_noisy_coverage():
    """Test that the fitted mu and its standard error cover the truth under 5% scatter"""
    atom_counts = np.linspace(2e7, 2.2e8, 9)
    covered = 0
    estimates = []
    for seed in range(20):
        rng = np.random.default_rng(seed)
        strengths = (1.0 + MU * atom_counts) * (1.0 + 0.05 * rng.standard_normal(atom_counts.size))
        result = fit_mu([StrengthPoint(atom_count=n, strength=s) for n, s in zip(atom_counts, strengths)])
        estimates.append(result.mu)
        covered += abs(result.mu - MU) <= 2.0 * result.mu_stderr
    assert covered >= 12
    assert np.mean(estimates) == pytest.approx(MU, rel=0.03)


def test_fit_mu_degenerate_inputs():
    """Test that empty input and all-zero atom counts cannot determine mu"""
    with pytest.raises(DegenerateInputError):
        fit_mu([])
    with pytest.raises(DegenerateInputError):
        fit_mu([StrengthPoint(atom_count=0.0, strength=1.0)] * 3)


def test_fit_mu_single_point():
    """Test that one point fixes mu with zero standard error"""
    result = fit_mu([StrengthPoint(atom_count=1e8, strength=116.0)])
    assert result.mu == pytest.approx(1.15e-6)
    assert result.mu_stderr == 0.0
