from collections import namedtuple
import math

from ..utils.constants import K_B
from ..utils.errors import DomainError


GasSpecies = namedtuple('GasSpecies', ('name', 'mass', 'radius'))

GasState = namedtuple('GasState',
  ('species', 'temperature', 'pressure', 'number_density', 'v_rms',
   'v_mean', 'mean_free_path', 'collision_rate'))


def collision_cross_section(radius):
  # Hard-sphere collision diameter is 2r
  return math.pi * (2 * radius) ** 2

def kinetic_mean_free_path(number_density, radius):
  return 1 / (math.sqrt(2) * collision_cross_section(radius) * number_density)

def derive_state(species: GasSpecies, temperature: float, pressure: float) -> GasState:
  """
  Derives the ideal-gas kinetic state of a species.

  Args:
    species: GasSpecies with mass in kg and hard-sphere radius in m
    temperature: K
    pressure: Pa

  Returns:
    state: GasState, every field in SI units
  """
  if not temperature > 0:
    raise DomainError('temperature must be positive, got {!r} K'.format(temperature))
  if not pressure > 0:
    raise DomainError('pressure must be positive, got {!r} Pa'.format(pressure))
  if not species.mass > 0 or not species.radius > 0:
    raise DomainError('species {} needs positive mass and radius'.format(species.name))

  number_density = pressure / (K_B * temperature)
  v_rms = math.sqrt(3 * K_B * temperature / species.mass)
  v_mean = math.sqrt(8 * K_B * temperature / (math.pi * species.mass))
  mean_free_path = kinetic_mean_free_path(number_density, species.radius)

  return GasState(
    species = species,
    temperature = temperature,
    pressure = pressure,
    number_density = number_density,
    v_rms = v_rms,
    v_mean = v_mean,
    mean_free_path = mean_free_path,
    collision_rate = v_mean / mean_free_path)

def collision_acceleration(state: GasState) -> float:
  # a ~ v^2 / r with <v^2> = 3 k_B T / m
  return 3 * K_B * state.temperature / (state.species.mass * state.species.radius)

def with_radius(species: GasSpecies, radius: float) -> GasSpecies:
  if not radius > 0:
    raise DomainError('radius must be positive, got {!r} m'.format(radius))
  return species._replace(radius=radius)
