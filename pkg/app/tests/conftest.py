import pytest

from app.models.data_models.RunConfig import RunConfig
from app.models.service_classes.SweepService import SweepService
from app.models.units import celsius_to_kelvin
from app.services.biphoton_service import normalized_waveform

COLD_C = 21.0
HOT_C = 95.0


@pytest.fixture(scope="session")
def config():
    return RunConfig()


@pytest.fixture(scope="session")
def sweep_service(config):
    return SweepService(config, max_workers=1)


@pytest.fixture(scope="session")
def cold_state(sweep_service):
    return sweep_service.state(celsius_to_kelvin(COLD_C))


@pytest.fixture(scope="session")
def hot_state(sweep_service):
    return sweep_service.state(celsius_to_kelvin(HOT_C))


@pytest.fixture(scope="session")
def cold_model(sweep_service):
    return sweep_service.forward_model(celsius_to_kelvin(COLD_C))[1]


@pytest.fixture(scope="session")
def hot_model(sweep_service):
    return sweep_service.forward_model(celsius_to_kelvin(HOT_C))[1]


@pytest.fixture(scope="session")
def cold_waveform(sweep_service):
    return sweep_service.waveform(celsius_to_kelvin(COLD_C))


@pytest.fixture(scope="session")
def hot_waveform(sweep_service):
    return sweep_service.waveform(celsius_to_kelvin(HOT_C))


@pytest.fixture(scope="session")
def hot_p1_convolved(hot_waveform):
    """Jitter-convolved 95 °C P1 rescaled to unit area, usable as a delay density"""
    return normalized_waveform(hot_waveform.p1_convolved)
