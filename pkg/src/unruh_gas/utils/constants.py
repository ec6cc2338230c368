from collections import namedtuple


# CODATA 2018, SI units throughout the package
PhysicalConstants = namedtuple('PhysicalConstants', ('hbar', 'k_B', 'c'))

HBAR = 1.054571817e-34 # J s
K_B = 1.380649e-23 # J / K
C = 2.99792458e8 # m / s
ATOMIC_MASS_UNIT = 1.66053906660e-27 # kg

_CONSTANTS = PhysicalConstants(hbar=HBAR, k_B=K_B, c=C)

def constants():
  return _CONSTANTS


STP_TEMPERATURE = 273.15 # K
STP_PRESSURE = 101325.0 # Pa

WANDB_PROJECT = 'unruh-gas'
WANDB_ENTITY = None
