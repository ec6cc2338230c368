import pytest

from unruh_gas.gases import builtin_species, derive_state
from unruh_gas.utils.constants import STP_PRESSURE, STP_TEMPERATURE


@pytest.fixture
def n2():
  return builtin_species('N2')

@pytest.fixture
def n2_stp(n2):
  return derive_state(n2, STP_TEMPERATURE, STP_PRESSURE)
