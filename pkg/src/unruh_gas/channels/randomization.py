from dataclasses import dataclass
import math
from typing import Optional

from ..gases import GasState
from ..utils.errors import DomainError


CHANNEL_NAMES = ('unruh', 'mdw')
ROUNDING_MODES = ('ceil', 'nearest')
CEIL_SLACK = 1e-12


@dataclass(frozen=True)
class RandomizationReport:
  channel: str
  delta_theta0: float
  gain: float
  n_collisions: int
  randomization_time: float
  collision_estimate: float
  gain_source: str = 'kinetic'


def amplified_angle(delta_theta0: float, gain: float, n: int) -> float:
  """(gain)^n * delta_theta0, evaluated in log space."""
  if not delta_theta0 > 0:
    raise DomainError('delta_theta0 must be positive, got {!r}'.format(delta_theta0))
  if not gain > 0:
    raise DomainError('gain must be positive, got {!r}'.format(gain))
  if n < 0:
    raise DomainError('n must be non-negative, got {!r}'.format(n))
  return math.exp(n * math.log(gain) + math.log(delta_theta0))

def collision_estimate(delta_theta0: float, gain: float) -> float:
  if not delta_theta0 > 0:
    raise DomainError('delta_theta0 must be positive, got {!r}'.format(delta_theta0))
  if not gain > 1:
    raise DomainError('gain must exceed 1 for exponential amplification, got {!r}'.format(gain))
  if delta_theta0 >= 1:
    return 0.0
  return -math.log(delta_theta0) / math.log(gain)

def collisions_to_randomize(delta_theta0: float, gain: float, rounding: str = 'ceil') -> int:
  """
  Number of collisions n for (gain)^n delta_theta0 to reach order one.

  'ceil' gives the first threshold crossing, 'nearest' the closest integer
  to -ln(delta_theta0)/ln(gain).
  """
  estimate = collision_estimate(delta_theta0, gain)
  if rounding == 'ceil':
    # Exact crossings must not be pushed up by rounding in the quotient
    return math.ceil(estimate * (1 - CEIL_SLACK))
  elif rounding == 'nearest':
    return int(math.floor(estimate + 0.5))
  raise DomainError('rounding must be one of {}, got {!r}'.format(
    ', '.join(ROUNDING_MODES), rounding))

def kinetic_gain(state: GasState) -> float:
  return 2 * state.mean_free_path / state.species.radius

def build_report(state: GasState, channel: str, delta_theta0: float,
                 gain: Optional[float] = None, n_collisions: Optional[int] = None,
                 rounding: str = 'ceil') -> RandomizationReport:
  """
  Collision count and wall-clock randomization time for one channel.

  Args:
    state: gas state supplying the collision rate and, unless `gain` is
      given, the kinetic gain 2 lambda / r
    channel: 'unruh' or 'mdw'
    delta_theta0: per-collision kick of that channel
    gain: explicit per-collision gain, for calibrated reports
    n_collisions: force the collision count (timing checks)
    rounding: 'ceil' or 'nearest'

  Returns:
    RandomizationReport
  """
  if channel not in CHANNEL_NAMES:
    raise DomainError('channel must be one of {}, got {!r}'.format(
      ', '.join(CHANNEL_NAMES), channel))
  gain_source = 'kinetic' if gain is None else 'calibrated'
  gain = kinetic_gain(state) if gain is None else gain

  estimate = collision_estimate(delta_theta0, gain)
  if n_collisions is None:
    n_collisions = collisions_to_randomize(delta_theta0, gain, rounding)
  elif n_collisions < 0:
    raise DomainError('n_collisions must be non-negative, got {!r}'.format(n_collisions))

  return RandomizationReport(
    channel = channel,
    delta_theta0 = delta_theta0,
    gain = gain,
    n_collisions = n_collisions,
    randomization_time = n_collisions / state.collision_rate,
    collision_estimate = estimate,
    gain_source = gain_source)

def compare_channels(unruh: RandomizationReport, mdw: RandomizationReport) -> dict:
  log_ratio = math.log(mdw.delta_theta0) / math.log(unruh.delta_theta0)
  return {
    'log_kick_ratio': log_ratio,
    'collision_ratio': (mdw.n_collisions / unruh.n_collisions
                        if unruh.n_collisions else None),
    'dominant_channel': 'mdw' if mdw.delta_theta0 > unruh.delta_theta0 else 'unruh'}
