from dataclasses import dataclass
import math

from ..gases import GasState
from ..utils.constants import C, HBAR
from ..utils.errors import DomainError, ValidityError
from .base import BaseChannel


COUPLING_PREFACTOR = math.sqrt(10 * math.pi / 3)
# Nonrelativistic guard on v/c
MAX_SPEED_RATIO = 0.01
# Log-regime guard, coupling must be weak compared with omega0
MIN_U_RATIO = 10.0
ZETA_SERIES_BELOW = 1e-4
ZETA_LOG_SPLIT_ABOVE = 1e8


@dataclass(frozen=True)
class MdwEstimate:
  omega0: float
  coupling_omega: float
  u_ratio: float
  log_ratio: float
  zeta_value: float
  gamma_rate: float
  delta_p_squared: float
  delta_theta0: float
  closed_form_delta_theta0: float


def dn_zeta(u: float) -> float:
  """zeta(u) = ln(1 + u^2)/2u - arctan(u)/u^2 - 1/u."""
  if not u > 0:
    raise DomainError('u must be positive, got {!r}'.format(u))
  if u < ZETA_SERIES_BELOW:
    return -2 / u + 5 * u / 6 - 9 * u ** 3 / 20 + 13 * u ** 5 / 42
  if u > ZETA_LOG_SPLIT_ABOVE:
    # ln(1 + u^2) = 2 ln u + ln(1 + u^-2), u^2 would overflow near 1e154
    log_term = 2 * math.log(u) + math.log1p(u ** -2)
  else:
    log_term = math.log1p(u * u)
  return log_term / (2 * u) - math.atan(u) / u / u - 1 / u

def dn_coupling(k: float, r: float, omega: float) -> float:
  for value, name in ((k, 'k'), (r, 'r'), (omega, 'omega')):
    if not value > 0:
      raise DomainError('{} must be positive, got {!r}'.format(name, value))
  return COUPLING_PREFACTOR * (k * r) ** 3 * omega

def dn_reflectivity(omega: float, coupling_omega: float) -> complex:
  # Amplitude reflectivity of the imperfect mirror, R = -i Omega / (omega + i Omega)
  return -1j * coupling_omega / (omega + 1j * coupling_omega)

def closed_form_mdw_delta_theta0(radius, mass, v, log_ratio):
  return (HBAR / (radius * mass * v)) * math.sqrt(5 * math.pi / 6 * log_ratio) * (v / C) ** 4

def estimate_mdw(state: GasState) -> MdwEstimate:
  """
  Moore-DeWitt momentum diffusion during one collision.

  A collision is one half period of an oscillation at omega0 = v/r, so
  tau = pi/omega0, and the sampled wavenumber is fixed by kr = v/c.
  """
  species = state.species
  v, r, m = state.v_rms, species.radius, species.mass

  speed_ratio = v / C
  if speed_ratio >= MAX_SPEED_RATIO:
    raise ValidityError(
      'relativistic regime out of scope: v/c = {:.3g} >= {}'.format(speed_ratio, MAX_SPEED_RATIO))

  omega0 = v / r
  coupling_omega = dn_coupling(speed_ratio / r, r, omega0)
  u_ratio = omega0 / coupling_omega
  if u_ratio <= MIN_U_RATIO:
    raise ValidityError(
      'weak-coupling (log) regime violated: omega0/Omega = {:.3g} <= {:g}'.format(
        u_ratio, MIN_U_RATIO))

  zeta_value = dn_zeta(u_ratio)
  gamma_rate = HBAR * coupling_omega * omega0 / (2 * math.pi * m * C ** 2) * zeta_value
  tau = math.pi / omega0
  delta_p_squared = gamma_rate * m * omega0 * HBAR * tau / 2
  log_ratio = math.log(u_ratio)

  return MdwEstimate(
    omega0 = omega0,
    coupling_omega = coupling_omega,
    u_ratio = u_ratio,
    log_ratio = log_ratio,
    zeta_value = zeta_value,
    gamma_rate = gamma_rate,
    delta_p_squared = delta_p_squared,
    delta_theta0 = math.sqrt(delta_p_squared) / (m * v),
    closed_form_delta_theta0 = closed_form_mdw_delta_theta0(r, m, v, log_ratio))


class MdwChannel(BaseChannel):
  name = 'mdw'

  def estimate(self, state):
    return estimate_mdw(state)
