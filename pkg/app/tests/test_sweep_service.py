import numpy as np
import pytest

from app.models.data_models.RunConfig import RunConfig
from app.models.data_models.SweepTable import CSV_COLUMNS
from app.models.enums.EmissionRegime import EmissionRegime
from app.models.enums.McMode import McMode
from app.models.service_classes.SweepService import SweepService, temperature_sweep
from app.models.units import celsius_to_kelvin
from app.routers.sweep import summarize


@pytest.fixture(scope="module")
def default_sweep(sweep_service):
    return sweep_service.temperature_sweep()


def test_sweep_covers_all_temperatures(default_sweep):
    """Test that the default sweep has nine ascending rows and no failures"""
    assert default_sweep.ok
    assert len(default_sweep) == 9
    temperatures = [row.temperature for row in default_sweep.rows]
    assert temperatures == sorted(temperatures)
    assert temperatures[0] == pytest.approx(celsius_to_kelvin(21.0))


def test_sweep_end_points(default_sweep):
    """Test the 21 and 95 °C widths, strengths and regimes"""
    cold, hot = default_sweep.rows[0], default_sweep.rows[-1]
    assert cold.fwhm_post_jitter == pytest.approx(0.60e-9, rel=0.25)
    assert hot.fwhm_post_jitter == pytest.approx(0.17e-9, rel=0.15)
    assert hot.strength == pytest.approx(259.4, rel=3e-3)
    assert cold.regime == EmissionRegime.DILUTE
    assert hot.regime == EmissionRegime.PRONOUNCED
    assert hot.od == pytest.approx(21.8, rel=1e-2)


def test_superradiance_explains_narrowing(default_sweep):
    """Test that the collective decay, not Doppler dephasing alone, narrows the photon"""
    summary = summarize(default_sweep)
    assert summary.fwhm_reduction_superradiant > 0.6
    assert summary.fwhm_reduction_doppler_only < 0.25
    assert 1e3 <= summary.brightness_ratio <= 1e5


def test_widths_fall_with_temperature(default_sweep):
    """Test that the post-jitter width decreases across the sweep"""
    widths = [row.fwhm_post_jitter for row in default_sweep.rows]
    assert all(a > b for a, b in zip(widths, widths[1:]))


def test_predicted_car_at_operating_point(default_sweep):
    """Test that the 95 °C row reproduces the CAR the Monte Carlo rates were solved for"""
    assert default_sweep.rows[-1].car_predicted == pytest.approx(200.0, rel=1e-9)
    assert all(row.car_predicted > 1.0 for row in default_sweep.rows)


def test_sweep_frame_columns(default_sweep):
    """Test the fixed column order and the brightness normalization of the CSV frame"""
    frame = default_sweep.to_frame()
    assert list(frame.columns) == CSV_COLUMNS
    assert frame["brightness_rel"].iloc[0] == 1.0
    assert frame["temperature_C"].iloc[-1] == pytest.approx(95.0)


def test_failed_rows_are_kept_apart(config):
    """Test that a temperature outside the vapor-pressure band fails alone"""
    table = SweepService(config, max_workers=2).temperature_sweep([celsius_to_kelvin(21.0), 600.0])
    assert not table.ok
    assert len(table) == 1
    assert table.failures[0].temperature == 600.0
    assert table.failures[0].error_type == "RangeError"


def test_sweep_is_independent_of_worker_count(config):
    """Test that concurrent rows give the same table as sequential ones"""
    temperatures = [celsius_to_kelvin(t) for t in (95.0, 21.0, 57.0)]
    serial = SweepService(config, max_workers=1).temperature_sweep(temperatures)
    parallel = SweepService(config, max_workers=3).temperature_sweep(temperatures)
    assert serial == parallel
    assert [row.temperature for row in serial.rows] == sorted(temperatures)


def test_module_level_sweep(config):
    """Test that temperature_sweep builds the service from the config"""
    table = temperature_sweep(config, [celsius_to_kelvin(57.0)])
    assert len(table) == 1
    assert table.rows[0].od == pytest.approx(1.5, rel=1e-9)


def test_empty_sweep(sweep_service):
    """Test that an empty temperature list gives an empty table"""
    table = sweep_service.temperature_sweep([])
    assert len(table) == 0 and table.ok


def test_rates_mode_uses_configured_rates():
    """Test that explicit Monte Carlo rates bypass the operating-point solve"""
    config = RunConfig.model_validate({
        "mc": {"mode": "rates", "signal_rate_hz": 2e6, "background_idler_rate_hz": 1e5},
    })
    rates = SweepService(config, max_workers=1).resolve_mc_rates()
    assert config.mc.mode == McMode.RATES
    assert rates.signal_rate == 2e6
    assert rates.background_idler_rate == 1e5
    assert rates.jitter_fwhm == pytest.approx(100e-12)


def test_distance_scan_widths_increase(sweep_service):
    """Test that a larger interatomic distance gives a weaker enhancement and a wider photon"""
    results = sweep_service.distance_scan()
    assert [r.ratio for r in results] == [0.3, 0.5, 1.2]
    widths = [r.fwhm_post_jitter for r in results]
    strengths = [r.strength for r in results]
    assert widths[0] < widths[1] < widths[2]
    assert strengths[0] > strengths[1] > strengths[2] > 1.0
    assert np.all(np.isfinite(results[0].p1_convolved.values))


def test_table1_comparison_passes(sweep_service):
    """Test that all nine computed rows agree with the measured table"""
    rows = sweep_service.table1_comparison()
    assert len(rows) == 9
    assert all(row.r_sr_pass for row in rows)
    assert all(row.od_pass for row in rows)
    assert rows[0].regime == "dilute"
    assert rows[-1].regime == "pronounced"


def test_waveform_result(hot_waveform):
    """Test the 95 °C waveform bundle"""
    assert hot_waveform.strength == pytest.approx(259.4, rel=3e-3)
    assert hot_waveform.fwhm_pre_jitter < hot_waveform.fwhm_post_jitter
    assert hot_waveform.p1_raw.integral() == pytest.approx(1.0, abs=1e-9)


def test_unreachable_car_target_keeps_rows():
    """Test that an operating point with no solution leaves the CAR column empty instead of dropping rows"""
    config = RunConfig.model_validate({"mc": {"target_car": 1e7}, "sweep": {"temperatures_c": [21.0, 95.0]}})
    table = SweepService(config, max_workers=1).temperature_sweep()
    assert len(table) == 2
    assert all(row.car_predicted is None for row in table.rows)
    assert not table.ok
    assert [f.column for f in table.failures] == ["car_predicted", "car_predicted"]
    assert {f.error_type for f in table.failures} == {"RangeError"}
    frame = table.to_frame()
    assert frame["car_predicted"].isna().all()
    assert frame["fwhm_ns"].notna().all()


def test_zero_rates_give_column_failure():
    """Test that explicit zero rates record an unbounded CAR as a column failure"""
    config = RunConfig.model_validate({
        "mc": {"mode": "rates", "signal_rate_hz": 0.0, "background_idler_rate_hz": 0.0},
    })
    table = SweepService(config, max_workers=1).temperature_sweep([celsius_to_kelvin(57.0)])
    assert len(table) == 1
    assert table.rows[0].car_predicted is None
    assert table.failures[0].column == "car_predicted"
    assert table.failures[0].error_type == "DegenerateInputError"


def test_brightness_rises_with_temperature(default_sweep):
    """Test that the integrated brightness increases over every step of the default sweep"""
    values = [row.brightness for row in default_sweep.rows]
    assert len(values) == 9
    assert all(a < b for a, b in zip(values, values[1:]))
