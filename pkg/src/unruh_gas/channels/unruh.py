from dataclasses import dataclass
import math

from ..gases import GasState, collision_acceleration
from ..numerics import bose_power_integral, CLOSED_FORM_FACTORIAL
from ..utils.constants import C, HBAR, K_B
from ..utils.errors import DomainError, ValidityError
from .base import BaseChannel


# The peak sits at alpha x ~ BOSE_POWER for the x^8 moment
BOSE_POWER = 8
# Nonrelativistic guard on alpha
MIN_ALPHA = 1e3
# Rayleigh (long wavelength) guard on kr
MAX_RAYLEIGH_KR = 0.1
# exp(-x) is used for the occupation above this exponent
OCCUPATION_ASYMPTOTIC_EXPONENT = 700.0


@dataclass(frozen=True)
class UnruhEstimate:
  acceleration: float
  unruh_temperature: float
  alpha: float
  peak_wavenumber: float
  peak_wavelength: float
  delta_p_squared: float
  delta_theta0: float
  rmv_over_hbar: float
  integral_method: str = CLOSED_FORM_FACTORIAL


def unruh_temperature(a: float) -> float:
  if not a >= 0:
    raise DomainError('acceleration must be non-negative, got {!r} m/s^2'.format(a))
  return HBAR * a / (2 * math.pi * K_B * C)

def mean_occupation(omega: float, a: float) -> float:
  if not omega > 0:
    raise DomainError('omega must be positive, got {!r} rad/s'.format(omega))
  if not a > 0:
    raise DomainError('acceleration must be positive, got {!r} m/s^2'.format(a))
  exponent = 2 * math.pi * C * omega / a
  if exponent > OCCUPATION_ASYMPTOTIC_EXPONENT:
    return math.exp(-exponent)
  return 1 / math.expm1(exponent)

def conducting_sphere_cross_section(k: float, r: float) -> float:
  if not k > 0 or not r > 0:
    raise DomainError('k and r must be positive, got k={!r}, r={!r}'.format(k, r))
  kr = k * r
  if kr >= MAX_RAYLEIGH_KR:
    raise ValidityError(
      'Rayleigh regime violated: kr = {:.3g} >= {}'.format(kr, MAX_RAYLEIGH_KR))
  return (10 * math.pi / 3) * r ** 2 * kr ** 4

def scattering_rate(k: float, r: float, a: float) -> float:
  """Gamma_k V = nbar(ck) c sigma(k); the field volume V drops out."""
  return mean_occupation(C * k, a) * C * conducting_sphere_cross_section(k, r)

def peak_wavelength(k: float) -> float:
  if not k > 0:
    raise DomainError('wavenumber must be positive, got {!r} 1/m'.format(k))
  return 2 * math.pi / k

def unruh_alpha(acceleration: float, radius: float) -> float:
  return 2 * math.pi * C ** 2 / (acceleration * radius)

def closed_form_delta_theta0(rmv_over_hbar, alpha, v):
  """Per-collision kick with the -1 of the Bose factor dropped, in log space."""
  log_kick = (-math.log(rmv_over_hbar)
    + 0.5 * math.log(math.factorial(BOSE_POWER) * 5 * C / (3 * math.pi * v))
    - (BOSE_POWER + 1) / 2 * math.log(alpha))
  return math.exp(log_kick)

def _build_estimate(acceleration, alpha, radius, mass, v, integral_method):
  if not alpha >= MIN_ALPHA:
    raise ValidityError(
      'relativistic regime out of scope: alpha = {:.3g} < {:g}'.format(alpha, MIN_ALPHA))

  integral = bose_power_integral(alpha, BOSE_POWER, integral_method)
  delta_p_squared = (5 * HBAR ** 2 / (3 * math.pi * radius ** 2)) * (C / v) * integral.value
  peak_wavenumber = BOSE_POWER / (alpha * radius)

  return UnruhEstimate(
    acceleration = acceleration,
    unruh_temperature = unruh_temperature(acceleration),
    alpha = alpha,
    peak_wavenumber = peak_wavenumber,
    peak_wavelength = peak_wavelength(peak_wavenumber),
    delta_p_squared = delta_p_squared,
    delta_theta0 = math.sqrt(delta_p_squared) / (mass * v),
    rmv_over_hbar = radius * mass * v / HBAR,
    integral_method = integral.method)

def estimate_unruh(state: GasState, integral_method: str = CLOSED_FORM_FACTORIAL) -> UnruhEstimate:
  """
  Momentum diffusion from the Unruh radiation seen during one collision.

  The collision lasts tau = r/v_rms at acceleration a = v_rms^2/r, so the
  mode integral of hbar^2 k^2 Gamma_k tau collapses to

    dp^2 = (5 hbar^2 / (3 pi r^2)) (c / v) I(alpha, 8),  alpha = 2 pi c^2 / (a r)

  and the kick is dp / (m v).
  """
  species = state.species
  acceleration = collision_acceleration(state)
  alpha = unruh_alpha(acceleration, species.radius)
  return _build_estimate(acceleration, alpha, species.radius, species.mass,
                         state.v_rms, integral_method)

def estimate_unruh_calibrated(rmv_over_hbar: float, alpha: float, temperature: float,
                              v: float, radius: float,
                              integral_method: str = CLOSED_FORM_FACTORIAL) -> UnruhEstimate:
  """
  Unruh estimate with r m v and alpha injected instead of derived.

  The mass is implied by m = rmv hbar / (r v). When `alpha` is None it is
  derived from the temperature, alpha = 2 pi m c^2 / (3 k_B T).
  """
  for value, name in ((rmv_over_hbar, 'rmv_over_hbar'), (v, 'v'), (radius, 'radius')):
    if not value > 0:
      raise DomainError('{} must be positive, got {!r}'.format(name, value))
  mass = rmv_over_hbar * HBAR / (radius * v)
  if alpha is None:
    if not temperature > 0:
      raise DomainError('temperature must be positive, got {!r} K'.format(temperature))
    alpha = 2 * math.pi * mass * C ** 2 / (3 * K_B * temperature)
  elif not alpha > 0:
    raise DomainError('alpha must be positive, got {!r}'.format(alpha))

  acceleration = 2 * math.pi * C ** 2 / (alpha * radius)
  return _build_estimate(acceleration, alpha, radius, mass, v, integral_method)


class UnruhChannel(BaseChannel):
  name = 'unruh'

  def __init__(self, integral_method=CLOSED_FORM_FACTORIAL):
    self.integral_method = integral_method

  def estimate(self, state):
    return estimate_unruh(state, self.integral_method)
