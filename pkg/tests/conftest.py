import pytest

from msdp.examples import climate_spec, scheduling_spec, stochastic_climate_spec


@pytest.fixture
def climate_min():
    return climate_spec("min")


@pytest.fixture
def climate_max():
    return climate_spec("max")


@pytest.fixture
def climate_sum():
    return climate_spec("sum")


@pytest.fixture
def scheduling():
    return scheduling_spec()


@pytest.fixture
def stoch_climate():
    return stochastic_climate_spec()
