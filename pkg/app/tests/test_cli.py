import orjson
import pandas as pd
import pytest

from app.main import main
from scripts.synthetic_strength_generator import generate_points

FAST_MC = """
[mc]
duration_s = 0.01
seed = 42
"""


@pytest.fixture
def fast_config(tmp_path):
    path = tmp_path / "fast.toml"
    path.write_text(FAST_MC, encoding="utf-8")
    return path


def test_table1_command(tmp_path):
    """Test that table1 writes nine passing rows and exits cleanly"""
    assert main(["--out", str(tmp_path), "table1"]) == 0
    frame = pd.read_csv(tmp_path / "table1.csv")
    assert len(frame) == 9
    assert frame["r_sr_pass"].all()
    assert frame["od_pass"].all()


def test_waveform_command_is_deterministic(tmp_path):
    """Test that two waveform runs give byte-identical files with the hot width"""
    first, second = tmp_path / "first", tmp_path / "second"
    assert main(["--out", str(first), "waveform", "--temp", "95"]) == 0
    assert main(["--out", str(second), "waveform", "--temp", "95"]) == 0
    for name in ("waveform_95C.csv", "waveform_95C.json"):
        assert (first / name).read_bytes() == (second / name).read_bytes()
    summary = orjson.loads((first / "waveform_95C.json").read_bytes())
    assert summary["fwhm_ns"] == pytest.approx(0.17, rel=0.15)
    frame = pd.read_csv(first / "waveform_95C.csv")
    assert list(frame.columns) == ["tau_ns", "p1_raw", "p1_convolved"]
    assert len(frame) == 1201


def test_cold_waveform_distance(tmp_path):
    """Test that the 21 °C summary reports r_SR / lambda near 2.04"""
    assert main(["--out", str(tmp_path), "waveform", "--temp", "21"]) == 0
    summary = orjson.loads((tmp_path / "waveform_21C.json").read_bytes())
    assert summary["r_sr_over_lambda"] == pytest.approx(2.04, rel=0.02)
    assert summary["regime"] == "dilute"


def test_fit_mu_command_recovers_mu(tmp_path):
    """Test that fit-mu on noiseless synthetic data returns the generating mu"""
    data = tmp_path / "points.csv"
    generate_points(1.15e-6, 2e7, 2.2e8, 9, 0.0, 42).to_csv(data, index=False)
    assert main(["--out", str(tmp_path), "fit-mu", "--data", str(data)]) == 0
    result = orjson.loads((tmp_path / "fit_mu.json").read_bytes())
    assert result["mu"] == pytest.approx(1.15e-6, rel=1e-10)
    assert result["source_columns"] == ["N", "strength"]
    assert len(pd.read_csv(tmp_path / "fit_mu_points.csv")) == 9


def test_fit_mu_from_widths(tmp_path):
    """Test that fit-mu inverts measured widths through the forward model"""
    data = tmp_path / "widths.csv"
    data.write_text("temperature_C,fwhm_ns\n87.0,0.2\n95.0,0.17\n")
    assert main(["--out", str(tmp_path), "fit-mu", "--data", str(data)]) == 0
    result = orjson.loads((tmp_path / "fit_mu.json").read_bytes())
    assert result["n_points"] == 2
    assert 1e-7 < result["mu"] < 1e-5


def test_fit_mu_rejects_unknown_columns(tmp_path):
    """Test that a CSV without recognised columns is a syntax error"""
    data = tmp_path / "bad.csv"
    data.write_text("x,y\n1,2\n")
    assert main(["--out", str(tmp_path), "fit-mu", "--data", str(data)]) == 3


def test_missing_config_exit_code(tmp_path):
    """Test that a missing config file exits with 2"""
    assert main(["--config", str(tmp_path / "absent.toml"), "--out", str(tmp_path), "table1"]) == 2


def test_invalid_config_exit_code(tmp_path):
    """Test that an invalid config exits with 4"""
    path = tmp_path / "bad.toml"
    path.write_text("[geometry]\nlength_mm = -1.0\n")
    assert main(["--config", str(path), "--out", str(tmp_path), "table1"]) == 4


def test_mc_command_is_deterministic(tmp_path, fast_config):
    """Test that two Monte Carlo runs with the same seed give identical files"""
    first, second = tmp_path / "first", tmp_path / "second"
    assert main(["--config", str(fast_config), "--out", str(first), "mc"]) == 0
    assert main(["--config", str(fast_config), "--out", str(second), "mc"]) == 0
    for name in ("events.csv", "events.bin", "histogram.csv", "mc_summary.json"):
        assert (first / name).read_bytes() == (second / name).read_bytes()
    summary = orjson.loads((first / "mc_summary.json").read_bytes())
    assert summary["seed"] == 42
    assert summary["car_predicted"] == pytest.approx(200.0, rel=1e-6)
    assert summary["signal_events"] > 0


def test_mc_seed_override(tmp_path, fast_config):
    """Test that --seed changes the sampled events"""
    assert main(["--config", str(fast_config), "--out", str(tmp_path / "a"), "mc"]) == 0
    assert main(["--config", str(fast_config), "--out", str(tmp_path / "b"), "mc", "--seed", "7"]) == 0
    assert (tmp_path / "a" / "events.bin").read_bytes() != (tmp_path / "b" / "events.bin").read_bytes()
    assert orjson.loads((tmp_path / "b" / "mc_summary.json").read_bytes())["seed"] == 7


def test_distance_scan_command(tmp_path):
    """Test the distance-scan columns and widths"""
    assert main(["--out", str(tmp_path), "distance-scan"]) == 0
    frame = pd.read_csv(tmp_path / "distance_scan.csv")
    assert list(frame.columns) == ["tau_ns", "p1_rsr_0.3", "p1_rsr_0.5", "p1_rsr_1.2"]
    widths = orjson.loads((tmp_path / "distance_scan.json").read_bytes())["fwhm_ns"]
    assert widths == sorted(widths)


def test_sweep_command(tmp_path):
    """Test that sweep writes the fixed CSV columns and a summary"""
    path = tmp_path / "short.toml"
    path.write_text("[sweep]\ntemperatures_c = [21.0, 95.0]\n")
    assert main(["--config", str(path), "--out", str(tmp_path), "sweep"]) == 0
    frame = pd.read_csv(tmp_path / "sweep.csv")
    assert list(frame.columns)[:7] == [
        "temperature_C", "OD", "r_sr_over_lambda", "fwhm_ns", "strength", "brightness_rel", "car_predicted",
    ]
    summary = orjson.loads((tmp_path / "sweep.json").read_bytes())
    assert summary["rows"] == 2 and summary["failures"] == []


def test_sweep_command_flags_failed_rows(tmp_path):
    """Test that a failing sweep row still writes output and exits with 5"""
    path = tmp_path / "hot.toml"
    path.write_text("[sweep]\ntemperatures_c = [21.0, 400.0]\n")
    assert main(["--config", str(path), "--out", str(tmp_path), "sweep"]) == 5
    summary = orjson.loads((tmp_path / "sweep.json").read_bytes())
    assert summary["failures"][0]["error_type"] == "RangeError"


def test_sweep_command_keeps_rows_without_car(tmp_path):
    """Test that an unreachable CAR target still writes every sweep row and exits with 5"""
    path = tmp_path / "target.toml"
    path.write_text("[sweep]\ntemperatures_c = [21.0]\n\n[mc]\ntarget_car = 1e7\n")
    assert main(["--config", str(path), "--out", str(tmp_path), "sweep"]) == 5
    frame = pd.read_csv(tmp_path / "sweep.csv")
    assert len(frame) == 1
    assert frame["car_predicted"].isna().all()
    summary = orjson.loads((tmp_path / "sweep.json").read_bytes())
    assert summary["failures"][0]["column"] == "car_predicted"


def test_fit_mu_rejects_out_of_range_rows(tmp_path):
    """Test that a strength below one is a validation error naming its line, not a crash"""
    data = tmp_path / "weak.csv"
    data.write_text("N,strength\n1e6,0.5\n2e8,231.0\n")
    assert main(["--out", str(tmp_path), "fit-mu", "--data", str(data)]) == 4
    assert not (tmp_path / "fit_mu.json").exists()


def test_fit_mu_rejects_non_numeric_cells(tmp_path):
    """Test that text or empty cells in the data columns are a syntax error"""
    data = tmp_path / "text.csv"
    data.write_text("N,strength\n1e6,abc\n2e8,231.0\n")
    assert main(["--out", str(tmp_path), "fit-mu", "--data", str(data)]) == 3
    data.write_text("N,strength\n1e6,\n2e8,231.0\n")
    assert main(["--out", str(tmp_path), "fit-mu", "--data", str(data)]) == 3
