import math

import numpy as np
import pytest

from unruh_gas.simulation import (deflection_sensitivity, deflection_sensitivity_numeric,
                                  minimum_image, predict_pair_collision,
                                  resolve_elastic_collision)
from unruh_gas.utils import DomainError, SimulationIntegrityError


def test_head_on_prediction():
  r = 0.5
  t = predict_pair_collision([4 * r, 0, 0], [-1, 0, 0], [0, 0, 0], [0, 0, 0], r)
  assert t == pytest.approx(2 * r, rel=1e-12)

def test_receding_pair():
  assert predict_pair_collision([2, 0, 0], [1, 0, 0], [0, 0, 0], [0, 0, 0], 0.5) is None

def test_grazing_contact():
  # Impact parameter exactly 2r, zero discriminant
  t = predict_pair_collision([0, 0, 0], [1, 0, 0], [10, 1, 0], [0, 0, 0], 0.5)
  assert t == 10.0

def test_miss():
  assert predict_pair_collision([0, 0, 0], [1, 0, 0], [10, 1.5, 0], [0, 0, 0], 0.5) is None

def test_prediction_across_boundary():
  t = predict_pair_collision([0.5, 5, 5], [-1, 0, 0], [9.5, 5, 5], [0, 0, 0], 0.25,
                             box_length=10.0)
  assert t == pytest.approx(0.5, rel=1e-12)

def test_overlap_is_integrity_error():
  with pytest.raises(SimulationIntegrityError) as info:
    predict_pair_collision([0, 0, 0], [1, 0, 0], [0.5, 0, 0], [0, 0, 0], 0.5)
  assert info.value.state['contact_distance'] == 1.0

def test_minimum_image():
  dr = minimum_image(np.array([9.0, -6.0, 2.0]), 10.0)
  assert dr.tolist() == [-1.0, 4.0, 2.0]
  assert minimum_image(np.array([9.0, 0, 0])).tolist() == [9.0, 0, 0]

def test_head_on_swap():
  va, vb = resolve_elastic_collision(([0, 0, 0], [1, 0, 0]), ([1, 0, 0], [-1, 0, 0]), 0.5)
  assert va.tolist() == [-1.0, 0.0, 0.0]
  assert vb.tolist() == [1.0, 0.0, 0.0]

def test_tangential_velocities_unchanged():
  va, vb = resolve_elastic_collision(([0, 0, 0], [0, 1, 0]), ([1, 0, 0], [0, -1, 0]), 0.5)
  assert va.tolist() == [0.0, 1.0, 0.0]
  assert vb.tolist() == [0.0, -1.0, 0.0]

def test_random_pair_conserves():
  rng = np.random.default_rng(7)
  r = 0.3
  for _ in range(20):
    normal = rng.normal(size=3)
    normal /= np.linalg.norm(normal)
    ra = rng.uniform(0, 5, 3)
    rb = ra - 2 * r * normal
    va, vb = rng.normal(size=3), rng.normal(size=3)
    va_new, vb_new = resolve_elastic_collision((ra, va), (rb, vb), r)

    energy = np.sum(va ** 2) + np.sum(vb ** 2)
    assert np.sum(va_new ** 2) + np.sum(vb_new ** 2) == pytest.approx(energy, rel=1e-12)
    np.testing.assert_allclose(va_new + vb_new, va + vb, rtol=0, atol=1e-12 * energy)

def test_not_in_contact():
  with pytest.raises(SimulationIntegrityError):
    resolve_elastic_collision(([0, 0, 0], [1, 0, 0]), ([1.5, 0, 0], [-1, 0, 0]), 0.5)

def test_deflection_sensitivity():
  assert deflection_sensitivity(0.3) == 2.0
  for theta in (0.1, 0.7, -0.4):
    assert deflection_sensitivity_numeric(theta) == pytest.approx(2.0, abs=1e-4)

@pytest.mark.parametrize('theta', [math.pi / 2, -2.0])
def test_deflection_domain(theta):
  with pytest.raises(DomainError):
    deflection_sensitivity(theta)
  with pytest.raises(DomainError):
    deflection_sensitivity_numeric(theta)
