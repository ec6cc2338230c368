from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
import json
import math
import sys
from typing import List, Optional

import numpy as np
from tqdm import tqdm
import wandb

from ..channels.randomization import collisions_to_randomize
from ..gases.data import kinetic_mean_free_path
from ..utils.errors import DomainError, ValidityError
from .collisions import minimum_image
from .system import HardSphereSystem


SIM_MODES = ('twin', 'kick')
MAX_PACKING = 0.3
MIN_BOX_RADII = 10
MAX_SEED = 2 ** 64

# Divergence fit window and early stop, in radians
FIT_START_FACTOR = 10.0
FIT_END_ANGLE = 0.1
SATURATION_ANGLE = 1.0

# Kick mode stops once the velocity autocorrelation falls below 1/e
DECORRELATION_LEVEL = math.exp(-1)
MAX_KICK_DRAWS = 16

PRNG_ALGORITHM = 'PCG64'


@dataclass(frozen=True)
class SimConfig:
  n_particles: int
  box_length: float
  radius: float = 1.0
  speed_scale: float = 1.0
  seed: int = 0
  mode: str = 'twin'
  perturbation: float = 1e-9
  max_collisions_per_particle: int = 20
  mass: float = 1.0
  record_every: int = 1

  @classmethod
  def from_packing(cls, n_particles, packing, radius=1.0, **kwargs):
    """Config whose cubic box gives the requested packing fraction."""
    if not packing > 0:
      raise DomainError('packing must be positive, got {!r}'.format(packing))
    if not n_particles > 0:
      raise DomainError('n_particles must be positive, got {!r}'.format(n_particles))
    volume = n_particles * (4 / 3) * math.pi * radius ** 3 / packing
    return cls(n_particles=n_particles, box_length=volume ** (1 / 3), radius=radius, **kwargs)

  @property
  def packing_fraction(self):
    return self.n_particles * (4 / 3) * math.pi * self.radius ** 3 / self.box_length ** 3

  @property
  def lattice_cells(self):
    # Smallest m with m**3 >= n_particles
    m = int(round(self.n_particles ** (1 / 3)))
    while m ** 3 < self.n_particles:
      m += 1
    return m

  @property
  def lattice_spacing(self):
    return self.box_length / self.lattice_cells

  @property
  def max_collisions(self):
    return int(math.ceil(self.max_collisions_per_particle * self.n_particles / 2))

  def validate(self):
    if self.mode not in SIM_MODES:
      raise DomainError('mode must be one of {}, got {!r}'.format(', '.join(SIM_MODES), self.mode))
    if self.n_particles < 2:
      raise DomainError('n_particles must be at least 2, got {!r}'.format(self.n_particles))
    for name in ('box_length', 'radius', 'speed_scale', 'mass'):
      if not getattr(self, name) > 0 or not math.isfinite(getattr(self, name)):
        raise DomainError('{} must be positive and finite, got {!r}'.format(
          name, getattr(self, name)))
    if not 0 <= self.seed < MAX_SEED:
      raise DomainError('seed must be a 64-bit unsigned integer, got {!r}'.format(self.seed))
    if self.max_collisions_per_particle < 1:
      raise DomainError('max_collisions_per_particle must be at least 1, got {!r}'.format(
        self.max_collisions_per_particle))
    if self.record_every < 1:
      raise DomainError('record_every must be at least 1, got {!r}'.format(self.record_every))

    if self.mode == 'twin' and not 0 <= self.perturbation < math.pi:
      raise DomainError('twin perturbation must lie in [0, pi), got {!r}'.format(self.perturbation))
    if self.mode == 'kick' and not 0 < self.perturbation < math.pi:
      raise DomainError('kick perturbation must lie in (0, pi), got {!r}'.format(self.perturbation))

    if not self.packing_fraction < MAX_PACKING:
      raise ValidityError('packing fraction {:.4g} is outside the dilute regime (< {})'.format(
        self.packing_fraction, MAX_PACKING))
    if self.box_length < MIN_BOX_RADII * self.radius:
      raise ValidityError('box length must be at least {} radii for minimum-image '
                          'prediction'.format(MIN_BOX_RADII))
    if not self.lattice_spacing > 2 * self.radius:
      raise ValidityError('{} particles do not fit on a non-overlapping lattice in this '
                          'box'.format(self.n_particles))
    return self


@dataclass
class SimResult:
  config: SimConfig
  collisions_elapsed: int
  collisions_per_particle: float
  simulated_time: float
  divergence_series: List[list]
  fitted_log_growth_per_collision: Optional[float]
  fit_window: Optional[list]
  energy_drift: float
  momentum_drift: List[float]
  mean_free_path: Optional[float]
  kinetic_mean_free_path: float
  gain: Optional[float]
  collision_rate: Optional[float]
  decorrelation_collisions: Optional[float] = None
  predicted_collisions: Optional[int] = None
  prng: dict = field(default_factory=dict)

  def to_dict(self):
    return asdict(self)


### Initial conditions ###


def prng_info():
  return {'algorithm': PRNG_ALGORITHM, 'library': 'numpy', 'version': np.__version__}

def make_rng(seed):
  return np.random.Generator(np.random.PCG64(seed))

def initial_state(config: SimConfig, rng):
  """
  Jittered simple-cubic positions and Maxwell-Boltzmann velocities.

  The centre-of-mass velocity is removed and the speeds are rescaled so the
  rms speed equals `speed_scale` exactly.
  """
  n = config.n_particles
  cells = config.lattice_cells
  spacing = config.lattice_spacing

  idx = np.arange(cells)
  grid = np.stack(np.meshgrid(idx, idx, idx, indexing='ij'), axis=-1).reshape(-1, 3)[:n]
  # Neighbours can close at most 0.4 of the free gap
  jitter = 0.4 * (spacing - 2 * config.radius) / (2 * math.sqrt(3))
  positions = (grid + 0.5) * spacing + rng.uniform(-jitter, jitter, size=(n, 3))

  velocities = rng.normal(0, config.speed_scale / math.sqrt(3), size=(n, 3))
  velocities -= velocities.mean(axis=0)
  velocities *= config.speed_scale / math.sqrt(np.mean(np.sum(velocities ** 2, axis=1)))
  return positions, velocities

def rotate_about_transverse(v, angle, rng):
  """Rotates v by `angle` about a uniformly random axis perpendicular to v."""
  v = np.asarray(v, dtype=float)
  speed = np.linalg.norm(v)
  if speed == 0 or angle == 0:
    return v.copy()
  direction = v / speed
  axis = rng.normal(size=3)
  axis -= np.dot(axis, direction) * direction
  axis /= np.linalg.norm(axis)
  return v * math.cos(angle) + np.cross(axis, v) * math.sin(angle)

def rms_angle(velocities_a, velocities_b, mask=None):
  """RMS angle between corresponding velocities, over `mask` if given."""
  if mask is not None and np.any(mask):
    velocities_a, velocities_b = velocities_a[mask], velocities_b[mask]
  cross = np.linalg.norm(np.cross(velocities_a, velocities_b), axis=1)
  dot = np.sum(velocities_a * velocities_b, axis=1)
  angles = np.arctan2(cross, dot)
  return float(np.sqrt(np.mean(angles ** 2)))

def velocity_autocorrelation(velocities, reference):
  return float(np.sum(velocities * reference) / np.sum(reference ** 2))


### Fitting ###


def fit_log_growth(series, n_particles):
  """
  Least-squares slope of ln(separation) against collisions per particle.

  The window opens at the first record ten times above the initial
  separation and closes before the first record at or above 0.1 rad.

  Returns:
    (slope, [first_index, last_index]) or (None, None) with fewer than 3 points
  """
  if not series or series[0][1] <= 0:
    return None, None
  start_level = FIT_START_FACTOR * series[0][1]

  window = []
  started = False
  for idx, separation in series:
    if separation >= FIT_END_ANGLE:
      break
    if not started and separation >= start_level:
      started = True
    if started:
      window.append((idx, separation))

  if len(window) < 3:
    return None, None
  x = np.array([2 * idx / n_particles for idx, _ in window])
  y = np.log([s for _, s in window])
  slope = float(np.polyfit(x, y, 1)[0])
  return slope, [int(window[0][0]), int(window[-1][0])]


### Runs ###


def _sync_replica(leader, follower):
  # Sample halfway to the leader's next event so both replicas have
  # processed the same collision even if its time differs slightly
  t_next = leader.next_event_time()
  t_sample = leader.time if not np.isfinite(t_next) else 0.5 * (leader.time + t_next)
  follower.run_until(t_sample)

def _matched(a, b):
  return a.collision_counts == b.collision_counts

def _measured(system):
  if system.n_collisions == 0:
    return None, None, None
  mean_free_path = system.mean_free_path()
  gain = 2 * mean_free_path / system.radius
  rate = system.collisions_per_particle() / system.time if system.time > 0 else None
  return mean_free_path, gain, rate

def _track(step, system, divergence):
  wandb.log({
    'sim_collisions_per_particle': system.collisions_per_particle(),
    'sim_divergence': divergence,
    'sim_energy_drift': system.energy_drift()}, step=step)

def make_kick(rng, sigma):
  """Post-collision hook rotating each collider by a N(0, sigma) angle."""
  def kick(system, i, j):
    dr = minimum_image(system.pos[i] - system.pos[j], system.box_length)
    vi, vj = system.vel[i].copy(), system.vel[j].copy()
    for _ in range(MAX_KICK_DRAWS):
      ki = rotate_about_transverse(vi, rng.normal(0, sigma), rng)
      kj = rotate_about_transverse(vj, rng.normal(0, sigma), rng)
      # Kicked pair must still be separating
      if np.dot(dr, ki - kj) >= 0:
        system.vel[i], system.vel[j] = ki, kj
        return
  return kick

def run_twin(config: SimConfig, rng, progress=False, track=False, log_every=100):
  positions, velocities = initial_state(config, rng)
  perturbed = velocities.copy()
  perturbed[0] = rotate_about_transverse(velocities[0], config.perturbation, rng)

  system = HardSphereSystem(positions, velocities, config.radius, config.box_length, config.mass)
  twin = HardSphereSystem(positions, perturbed, config.radius, config.box_length, config.mass)

  separation = rms_angle(system.vel, twin.vel)
  series = [[0, separation]]
  with tqdm(total=config.max_collisions, disable=not progress, file=sys.stderr,
            desc='twin') as pbar:
    while system.n_collisions < config.max_collisions:
      if not system.step():
        continue
      pbar.update(1)
      _sync_replica(system, twin)

      idx = system.n_collisions
      if idx % config.record_every == 0:
        separation = rms_angle(system.vel, twin.vel, _matched(system, twin))
        series.append([idx, separation])
        if track and idx % log_every == 0:
          _track(idx, system, separation)
        if separation >= SATURATION_ANGLE:
          break

  slope, window = fit_log_growth(series, config.n_particles)
  mean_free_path, gain, rate = _measured(system)
  return SimResult(
    config = config,
    collisions_elapsed = system.n_collisions,
    collisions_per_particle = system.collisions_per_particle(),
    simulated_time = system.time,
    divergence_series = series,
    fitted_log_growth_per_collision = slope,
    fit_window = window,
    energy_drift = max(system.energy_drift(), twin.energy_drift()),
    momentum_drift = np.maximum(np.abs(system.momentum_drift()),
                                np.abs(twin.momentum_drift())).tolist(),
    mean_free_path = mean_free_path,
    kinetic_mean_free_path = _kinetic_mean_free_path(config),
    gain = gain,
    collision_rate = rate,
    prng = prng_info())

def run_kick(config: SimConfig, rng, progress=False, track=False, log_every=100):
  positions, velocities = initial_state(config, rng)

  kicked = HardSphereSystem(positions, velocities, config.radius, config.box_length, config.mass,
                            post_collision=make_kick(rng, config.perturbation),
                            check_momentum=False)
  reference = HardSphereSystem(positions, velocities, config.radius, config.box_length,
                               config.mass)

  series = [[0, 0.0]]
  decorrelation = None
  with tqdm(total=config.max_collisions, disable=not progress, file=sys.stderr,
            desc='kick') as pbar:
    while kicked.n_collisions < config.max_collisions:
      if not kicked.step():
        continue
      pbar.update(1)
      _sync_replica(kicked, reference)

      idx = kicked.n_collisions
      if idx % config.record_every == 0:
        separation = rms_angle(kicked.vel, reference.vel, _matched(kicked, reference))
        series.append([idx, separation])
        if track and idx % log_every == 0:
          _track(idx, kicked, separation)

      if velocity_autocorrelation(kicked.vel, reference.vel) < DECORRELATION_LEVEL:
        decorrelation = kicked.collisions_per_particle()
        break

  mean_free_path, gain, rate = _measured(kicked)
  predicted = None
  if gain is not None and gain > 1:
    predicted = collisions_to_randomize(config.perturbation, gain)
  return SimResult(
    config = config,
    collisions_elapsed = kicked.n_collisions,
    collisions_per_particle = kicked.collisions_per_particle(),
    simulated_time = kicked.time,
    divergence_series = series,
    fitted_log_growth_per_collision = None,
    fit_window = None,
    energy_drift = max(kicked.energy_drift(), reference.energy_drift()),
    momentum_drift = np.abs(reference.momentum_drift()).tolist(),
    mean_free_path = mean_free_path,
    kinetic_mean_free_path = _kinetic_mean_free_path(config),
    gain = gain,
    collision_rate = rate,
    decorrelation_collisions = decorrelation,
    predicted_collisions = predicted,
    prng = prng_info())

def _kinetic_mean_free_path(config):
  return kinetic_mean_free_path(config.n_particles / config.box_length ** 3, config.radius)

MODE_RUNNERS = {
  'twin': run_twin,
  'kick': run_kick,
}

def run(config: SimConfig, progress=False, track=False, log_every=100) -> SimResult:
  """
  Runs one seeded simulation in the configured mode.

  The same config always produces the same result: every random draw
  comes from a single PCG64 stream seeded with `config.seed`.
  """
  config.validate()
  rng = make_rng(config.seed)
  return MODE_RUNNERS[config.mode](config, rng, progress=progress, track=track,
                                  log_every=log_every)

def run_ensemble(config: SimConfig, seeds, workers=None) -> dict:
  """Runs `config` once per seed in worker processes; results keyed by seed."""
  configs = {seed: replace(config, seed=seed).validate() for seed in seeds}
  if workers == 1:
    return {seed: run(c) for seed, c in configs.items()}

  with ProcessPoolExecutor(max_workers=workers) as executor:
    futures = {seed: executor.submit(run, c) for seed, c in configs.items()}
    return {seed: future.result() for seed, future in futures.items()}

def _finite_or_none(value):
  if isinstance(value, float) and not math.isfinite(value):
    return None
  return value

def result_document(result: SimResult) -> dict:
  """JSON-ready dict of a result, non-finite scalars mapped to None."""
  return {k: _finite_or_none(v) for k, v in result.to_dict().items()}

def serialize_result(result: SimResult) -> str:
  return json.dumps(result_document(result), sort_keys=True, indent=2, allow_nan=False)
