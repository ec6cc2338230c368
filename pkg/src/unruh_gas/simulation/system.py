import math

import numpy as np

from ..utils.errors import SimulationIntegrityError
from .collisions import minimum_image, resolve_elastic_collision, CONTACT_TOL
from .events import EventQueue, RECHECK


# Relative tolerances for the conservation checks
ENERGY_DRIFT_TOL = 1e-9
MOMENTUM_DRIFT_TOL = 1e-12
# Rebuild the heap when it holds this many entries per particle
COMPACT_FACTOR = 32


class HardSphereSystem():
  """
  Event-driven hard spheres of equal mass and radius in a periodic cube.

  Positions are stored lazily: particle i sits at pos[i] at time t_ref[i]
  and moves in a straight line until its next collision. A particle's
  version counter moves on every velocity change, which invalidates all of
  its queued events at once.

  Whenever a particle is predicted, every collision it would undergo before
  it has travelled `travel_limit` is queued, followed by a recheck at that
  point. Between two predictions of a pair, each partner travels less than
  a quarter box, so the colliding image is always the minimum image at the
  later prediction.
  """

  def __init__(self, positions, velocities, radius, box_length, mass=1.0,
               post_collision=None, check_momentum=True):
    self.n = len(positions)
    self.radius = radius
    self.sigma = 2 * radius
    self.box_length = box_length
    self.mass = mass
    self.post_collision = post_collision
    self.check_momentum = check_momentum

    self.travel_limit = box_length / 4 - self.sigma
    assert self.travel_limit > 0, 'Box must be larger than 8 radii!'

    self.pos = np.mod(np.array(positions, dtype=float), box_length)
    self.vel = np.array(velocities, dtype=float)
    assert self.pos.shape == (self.n, 3) and self.vel.shape == (self.n, 3), \
      'Positions and velocities must have shape (n, 3)!'
    self.t_ref = np.zeros(self.n)
    self.time = 0.0

    self.versions = np.zeros(self.n, dtype=np.int64)
    self.path_length = np.zeros(self.n)
    self.collision_counts = np.zeros(self.n, dtype=np.int64)
    self.n_collisions = 0
    self.n_events = 0
    self.queue = EventQueue()

    self.initial_energy = self.kinetic_energy()
    self.initial_momentum = self.momentum()
    self.momentum_scale = self.mass * float(np.sum(np.linalg.norm(self.vel, axis=1)))

    self._check_overlaps()
    for i in range(self.n):
      self.predict(i)

  ### Observables ###

  def kinetic_energy(self):
    return 0.5 * self.mass * float(np.sum(self.vel ** 2))

  def momentum(self):
    return self.mass * np.sum(self.vel, axis=0)

  def energy_drift(self):
    return abs(self.kinetic_energy() - self.initial_energy) / self.initial_energy

  def momentum_drift(self):
    return self.momentum() - self.initial_momentum

  def positions_at(self, t):
    pos = self.pos + self.vel * (t - self.t_ref)[:, None]
    return np.mod(pos, self.box_length)

  def total_path_length(self):
    speeds = np.linalg.norm(self.vel, axis=1)
    return float(np.sum(self.path_length + speeds * (self.time - self.t_ref)))

  def mean_free_path(self):
    if self.n_collisions == 0:
      return float('inf')
    return self.total_path_length() / (2 * self.n_collisions)

  def collisions_per_particle(self):
    return 2 * self.n_collisions / self.n

  ### Scheduling ###

  def _check_overlaps(self):
    for i in range(self.n - 1):
      dr = minimum_image(self.pos[i] - self.pos[i + 1:], self.box_length)
      dist = np.sqrt(np.sum(dr ** 2, axis=1))
      if np.any(dist < self.sigma * (1 - CONTACT_TOL)):
        j = i + 1 + int(np.argmin(dist))
        raise SimulationIntegrityError('particle overlap in initial configuration', {
          'i': i, 'j': j, 'separation': float(np.min(dist)), 'contact_distance': self.sigma})

  def _is_valid(self, event):
    if self.versions[event.i] != event.version_i:
      return False
    return event.j == RECHECK or self.versions[event.j] == event.version_j

  def _pair_times(self, i):
    """Times from now until i touches every other particle (inf if never)."""
    pos = self.positions_at(self.time)
    dr = minimum_image(pos[i] - pos, self.box_length)
    dv = self.vel[i] - self.vel
    b = np.sum(dr * dv, axis=1)
    dr_sq = np.sum(dr ** 2, axis=1)
    dv_sq = np.sum(dv ** 2, axis=1)
    discr = b ** 2 - dv_sq * (dr_sq - self.sigma ** 2)

    # Collision times calculated only where collisions are possible
    mask = np.logical_and(b < 0.0, discr > 0.0)
    mask[i] = False
    times = np.full(self.n, np.inf)
    times[mask] = np.maximum((-b[mask] - np.sqrt(discr[mask])) / dv_sq[mask], 0.0)
    return times

  def predict(self, i, exclude=None):
    """Queues the collisions of i within its travel horizon, then a recheck."""
    times = self._pair_times(i)
    if exclude is not None:
      times[exclude] = np.inf

    speed = math.sqrt(float(np.dot(self.vel[i], self.vel[i])))
    horizon = self.travel_limit / speed if speed > 0 else np.inf

    for k in np.nonzero(times <= horizon)[0]:
      self.queue.push(self.time + times[k], i, int(k), self.versions[i], self.versions[k])
    if np.isfinite(horizon):
      self.queue.push(self.time + horizon, i, RECHECK, self.versions[i])

    if len(self.queue) > COMPACT_FACTOR * self.n:
      self.queue.compact(self._is_valid)

  def next_event_time(self):
    self.queue.discard_stale(self._is_valid)
    if self.queue.isempty():
      return np.inf
    return self.queue.top().time

  ### Dynamics ###

  def _advance_particle(self, i, t):
    dt = t - self.t_ref[i]
    self.path_length[i] += math.sqrt(float(np.dot(self.vel[i], self.vel[i]))) * dt
    self.pos[i] = np.mod(self.pos[i] + self.vel[i] * dt, self.box_length)
    self.t_ref[i] = t

  def _collide(self, i, j):
    self._advance_particle(i, self.time)
    self._advance_particle(j, self.time)
    try:
      vi, vj = resolve_elastic_collision(
        (self.pos[i], self.vel[i]), (self.pos[j], self.vel[j]), self.radius, self.box_length)
    except SimulationIntegrityError as e:
      e.state.update({'time': self.time, 'i': i, 'j': j, 'n_collisions': self.n_collisions})
      raise
    self.vel[i], self.vel[j] = vi, vj
    if self.post_collision is not None:
      self.post_collision(self, i, j)

    self.n_collisions += 1
    self.collision_counts[i] += 1
    self.collision_counts[j] += 1
    self.versions[i] += 1
    self.versions[j] += 1

    # The pair has just separated and cannot meet again before another event
    self.predict(i, exclude=j)
    self.predict(j, exclude=i)

  def _check_conservation(self):
    drift = self.energy_drift()
    if drift > ENERGY_DRIFT_TOL:
      raise SimulationIntegrityError('energy drift above tolerance', {
        'time': self.time, 'n_collisions': self.n_collisions, 'energy_drift': drift})
    if self.check_momentum:
      dp = np.abs(self.momentum_drift())
      if np.any(dp > MOMENTUM_DRIFT_TOL * self.momentum_scale):
        raise SimulationIntegrityError('momentum drift above tolerance', {
          'time': self.time, 'n_collisions': self.n_collisions,
          'momentum_drift': dp.tolist(), 'momentum_scale': self.momentum_scale})

  def step(self):
    """Processes the next valid event; returns True if it was a collision."""
    event = self.queue.pop_valid(self._is_valid)
    if event is None:
      raise SimulationIntegrityError('event queue ran dry', {
        'time': self.time, 'n_collisions': self.n_collisions})

    # Guard against going back in time (should never happen)
    if event.time < self.time - 1e-12 * max(abs(self.time), 1e-300):
      raise SimulationIntegrityError('event scheduled in the past', {
        'time': self.time, 'event_time': event.time, 'i': event.i, 'j': event.j})
    self.time = max(event.time, self.time)
    self.n_events += 1

    if event.j == RECHECK:
      self.predict(event.i)
      return False

    self._collide(event.i, event.j)
    self._check_conservation()
    return True

  def next_collision(self):
    while not self.step():
      pass

  def run_until(self, t):
    """Processes every event up to and including time t."""
    while self.next_event_time() <= t:
      self.step()
