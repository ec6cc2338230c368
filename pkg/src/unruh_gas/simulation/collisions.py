import math

import numpy as np

from ..utils.errors import DomainError, SimulationIntegrityError


# Tolerated overlap when predicting, and contact mismatch when resolving
PREDICT_OVERLAP_TOL = 1e-12
CONTACT_TOL = 1e-9


def minimum_image(dr, box_length=None):
  if box_length is None:
    return dr
  return dr - box_length * np.rint(dr / box_length)

def predict_pair_collision(position_a, velocity_a, position_b, velocity_b, radius,
                           box_length=None):
  """
  Time until two hard spheres of radius r first touch.

  Solves |dx + dv t| = 2r for the smallest t > 0 under the minimum-image
  convention when `box_length` is given. Tangential contact (zero
  discriminant) counts as a collision.

  Returns:
    time of impact in s, or None if the spheres never reach contact
  """
  dr = minimum_image(np.asarray(position_a, dtype=float) - np.asarray(position_b, dtype=float),
                     box_length)
  dv = np.asarray(velocity_a, dtype=float) - np.asarray(velocity_b, dtype=float)
  sigma = 2 * radius
  dr_sq = float(np.dot(dr, dr))
  if dr_sq < (sigma - PREDICT_OVERLAP_TOL * radius) ** 2:
    raise SimulationIntegrityError('spheres overlap before prediction', {
      'separation': math.sqrt(dr_sq), 'contact_distance': sigma})

  b = float(np.dot(dr, dv))
  if b >= 0:
    return None
  dv_sq = float(np.dot(dv, dv))
  discr = b ** 2 - dv_sq * (dr_sq - sigma ** 2)
  if discr < 0:
    return None
  return max((-b - math.sqrt(discr)) / dv_sq, 0.0)

def resolve_elastic_collision(state_a, state_b, radius, box_length=None):
  """
  Elastic collision of two equal-mass spheres in contact.

  `state_a` and `state_b` are (position, velocity) pairs. The components of
  velocity along the centre line are exchanged; tangential components are
  untouched.

  Returns:
    (velocity_a, velocity_b) after the collision
  """
  (ra, va), (rb, vb) = state_a, state_b
  va, vb = np.asarray(va, dtype=float), np.asarray(vb, dtype=float)
  dr = minimum_image(np.asarray(ra, dtype=float) - np.asarray(rb, dtype=float), box_length)
  dr_sq = float(np.dot(dr, dr))
  distance = math.sqrt(dr_sq)
  if abs(distance - 2 * radius) > CONTACT_TOL * radius:
    raise SimulationIntegrityError('colliding spheres are not in contact', {
      'separation': distance, 'contact_distance': 2 * radius})

  factor = float(np.dot(dr, va - vb)) / dr_sq
  delta = factor * dr
  return va - delta, vb + delta


### Deflection geometry ###


def _outgoing_angle(theta, radius=1.0):
  # Centre-of-mass frame: A moves along +z, B along -z, contact normal at theta
  normal = np.array([math.sin(theta), 0.0, math.cos(theta)])
  ra = np.zeros(3)
  rb = ra + 2 * radius * normal
  va, _ = resolve_elastic_collision(
    (ra, np.array([0.0, 0.0, 1.0])), (rb, np.array([0.0, 0.0, -1.0])), radius)
  return math.atan2(va[0], va[2])

def _check_impact_angle(theta):
  if not abs(theta) < math.pi / 2:
    raise DomainError('impact angle must satisfy |theta| < pi/2, got {!r}'.format(theta))

def deflection_sensitivity(theta: float) -> float:
  """d(outgoing direction)/d(contact angle) for a fixed incoming direction."""
  _check_impact_angle(theta)
  return 2.0

def deflection_sensitivity_numeric(theta: float, delta: float = 1e-6) -> float:
  _check_impact_angle(theta)
  diff = _outgoing_angle(theta + delta) - _outgoing_angle(theta - delta)
  # Unwrap across the branch cut of atan2
  diff = (diff + math.pi) % (2 * math.pi) - math.pi
  return abs(diff) / (2 * delta)
