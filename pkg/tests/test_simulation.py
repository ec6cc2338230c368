import json
import math

import numpy as np
import pytest

from unruh_gas.channels import collisions_to_randomize
from unruh_gas.simulation import (HardSphereSystem, SimConfig, fit_log_growth, initial_state,
                                  make_rng, minimum_image, rms_angle, rotate_about_transverse,
                                  run, run_ensemble, serialize_result)
from unruh_gas.utils import DomainError, SimulationIntegrityError, ValidityError


def small_config(**kwargs):
  defaults = dict(n_particles=27, packing=0.01, seed=3, max_collisions_per_particle=6)
  defaults.update(kwargs)
  return SimConfig.from_packing(**defaults)


### Config ###


def test_from_packing():
  config = SimConfig.from_packing(500, 0.01, radius=1.85e-10, speed_scale=493.17)
  assert config.packing_fraction == pytest.approx(0.01, rel=1e-12)
  assert config.max_collisions == 5000
  assert config.validate() is config

def test_lattice_cells():
  assert SimConfig(n_particles=27, box_length=100.0).lattice_cells == 3
  assert SimConfig(n_particles=28, box_length=100.0).lattice_cells == 4
  assert SimConfig(n_particles=500, box_length=100.0).lattice_cells == 8

@pytest.mark.parametrize('kwargs, error', [
  (dict(packing=0.5), ValidityError),
  (dict(packing=0.29, n_particles=2), ValidityError),
  (dict(mode='soft'), DomainError),
  (dict(mode='kick', perturbation=0.0), DomainError),
  (dict(perturbation=-1e-9), DomainError),
  (dict(n_particles=1), DomainError),
  (dict(seed=-1), DomainError),
  (dict(max_collisions_per_particle=0), DomainError),
])
def test_invalid_configs(kwargs, error):
  with pytest.raises(error):
    small_config(**kwargs).validate()

def test_bad_packing():
  with pytest.raises(DomainError):
    SimConfig.from_packing(27, 0.0)


### Initial state and helpers ###


def test_initial_state():
  config = small_config(speed_scale=3.0)
  positions, velocities = initial_state(config, make_rng(config.seed))
  assert positions.shape == velocities.shape == (27, 3)

  speeds_sq = np.sum(velocities ** 2, axis=1)
  assert math.sqrt(np.mean(speeds_sq)) == pytest.approx(3.0, rel=1e-12)
  assert np.all(np.abs(velocities.sum(axis=0)) < 1e-12 * 3.0 * 27)

  for i in range(27):
    dr = minimum_image(positions[i] - np.delete(positions, i, axis=0), config.box_length)
    assert np.min(np.linalg.norm(dr, axis=1)) > 2 * config.radius

def test_rotation_about_transverse_axis():
  rng = make_rng(0)
  v = np.array([1.0, 2.0, -0.5])
  rotated = rotate_about_transverse(v, 0.3, rng)
  assert np.linalg.norm(rotated) == pytest.approx(np.linalg.norm(v), rel=1e-14)
  assert rms_angle(v[None], rotated[None]) == pytest.approx(0.3, rel=1e-9)
  assert rotate_about_transverse(v, 0.0, rng).tolist() == v.tolist()

def test_rms_angle_masks():
  a = np.array([[1.0, 0, 0], [0, 1.0, 0]])
  b = np.array([[1.0, 0, 0], [1.0, 0, 0]])
  assert rms_angle(a, a) == 0.0
  assert rms_angle(a, b) == pytest.approx(math.pi / 2 / math.sqrt(2), rel=1e-12)
  assert rms_angle(a, b, np.array([True, False])) == 0.0

def test_fit_log_growth():
  n = 100
  series = [[idx, 1e-9 * math.exp(3.0 * 2 * idx / n)] for idx in range(0, 400, 5)]
  slope, window = fit_log_growth(series, n)
  assert slope == pytest.approx(3.0, rel=1e-9)
  assert series[0][1] * 10 <= dict(series)[window[0]]
  assert dict(series)[window[1]] < 0.1

def test_fit_needs_three_points():
  assert fit_log_growth([[0, 1e-9], [1, 1e-7], [2, 1.0]], 10) == (None, None)
  assert fit_log_growth([[0, 0.0], [1, 0.0], [2, 0.0], [3, 0.0]], 10) == (None, None)


### Event-driven system ###


def test_two_particle_collisions():
  system = HardSphereSystem([[5, 5, 5], [8, 5, 5]], [[1, 0, 0], [-1, 0, 0]], 0.5, 20.0)
  system.next_collision()
  assert system.time == pytest.approx(1.0, rel=1e-12)
  assert system.vel.tolist() == [[-1.0, 0.0, 0.0], [1.0, 0.0, 0.0]]
  assert system.collision_counts.tolist() == [1, 1]
  assert system.mean_free_path() == pytest.approx(1.0, rel=1e-12)

  # They meet again through the periodic boundary
  system.run_until(10.5)
  assert system.n_collisions == 2
  assert system.time == pytest.approx(10.0, rel=1e-12)
  assert system.energy_drift() < 1e-15

def test_initial_overlap():
  with pytest.raises(SimulationIntegrityError) as info:
    HardSphereSystem([[5, 5, 5], [5.5, 5, 5]], [[1, 0, 0], [-1, 0, 0]], 0.5, 20.0)
  assert (info.value.state['i'], info.value.state['j']) == (0, 1)

def test_box_too_small():
  with pytest.raises(AssertionError):
    HardSphereSystem([[0, 0, 0], [2, 0, 0]], [[1, 0, 0], [-1, 0, 0]], 0.5, 3.0)

def test_event_times_never_decrease():
  config = small_config()
  positions, velocities = initial_state(config, make_rng(1))
  system = HardSphereSystem(positions, velocities, config.radius, config.box_length)
  last = 0.0
  for _ in range(500):
    system.step()
    assert system.time >= last
    last = system.time
  assert system.energy_drift() < 1e-9
  assert np.all(np.abs(system.momentum_drift()) < 1e-12 * system.momentum_scale)


### Runs ###


def test_identical_twins_never_diverge():
  result = run(small_config(perturbation=0.0))
  assert result.collisions_elapsed == small_config().max_collisions
  assert all(separation == 0.0 for _, separation in result.divergence_series)
  assert result.fitted_log_growth_per_collision is None

def test_twin_run():
  config = small_config(perturbation=1e-9)
  result = run(config)
  assert result.divergence_series[0] == [0, pytest.approx(1e-9 / math.sqrt(27), rel=1e-5)]
  assert result.energy_drift < 1e-9
  assert result.gain == pytest.approx(2 * result.mean_free_path / config.radius, rel=1e-12)
  assert result.collision_rate > 0
  assert result.kinetic_mean_free_path > 0
  assert result.prng['algorithm'] == 'PCG64'
  assert result.config == config

def test_run_is_deterministic():
  config = small_config(perturbation=1e-6, seed=11)
  assert serialize_result(run(config)) == serialize_result(run(config))

def test_serialized_layout():
  data = json.loads(serialize_result(run(small_config(max_collisions_per_particle=2))))
  assert data['config']['n_particles'] == 27
  assert data['prng'] == {'algorithm': 'PCG64', 'library': 'numpy', 'version': np.__version__}
  assert len(data['momentum_drift']) == 3
  for key in ('collisions_elapsed', 'divergence_series', 'fitted_log_growth_per_collision',
              'energy_drift', 'mean_free_path', 'gain', 'collision_rate'):
    assert key in data

def test_kick_run():
  config = small_config(mode='kick', perturbation=0.05, max_collisions_per_particle=10)
  result = run(config)
  assert result.energy_drift < 1e-9
  assert result.divergence_series[0] == [0, 0.0]
  assert result.predicted_collisions == collisions_to_randomize(0.05, result.gain)
  if result.decorrelation_collisions is not None:
    assert 0 < result.decorrelation_collisions <= config.max_collisions_per_particle

@pytest.mark.parametrize('workers', [1, 2])
def test_ensemble_keyed_by_seed(workers):
  config = small_config(max_collisions_per_particle=2)
  results = run_ensemble(config, [5, 2, 9], workers=workers)
  assert sorted(results) == [2, 5, 9]
  assert serialize_result(results[2]) == serialize_result(run(small_config(
    max_collisions_per_particle=2, seed=2)))


### Acceptance runs ###


@pytest.mark.slow
def test_growth_matches_geometric_gain():
  config = SimConfig.from_packing(500, 0.01, perturbation=1e-9, max_collisions_per_particle=20)
  results = run_ensemble(config, range(8))
  fits = [r.fitted_log_growth_per_collision for r in results.values()]
  assert all(fit is not None for fit in fits)
  fitted = np.mean(fits)
  predicted = np.mean([math.log(r.gain) for r in results.values()])
  assert predicted / 2 < fitted < 2 * predicted

@pytest.mark.slow
def test_mean_free_path_matches_kinetic_theory():
  result = run(SimConfig.from_packing(500, 0.01, seed=1, perturbation=0.0,
                                      max_collisions_per_particle=20))
  assert result.mean_free_path == pytest.approx(result.kinetic_mean_free_path, rel=0.15)

@pytest.mark.slow
def test_kick_decorrelation_matches_prediction():
  config = SimConfig.from_packing(500, 0.01, mode='kick', perturbation=1e-12,
                                  max_collisions_per_particle=40)
  results = run_ensemble(config, range(8))
  deviations = []
  for result in results.values():
    predicted = collisions_to_randomize(1e-12, result.gain)
    assert result.predicted_collisions == predicted
    assert result.decorrelation_collisions is not None
    deviations.append(result.decorrelation_collisions / predicted - 1)
  # Decorrelation comes early on every seed, the per-collision growth exceeds ln(gain)
  assert abs(np.mean(deviations)) <= 0.3

@pytest.mark.slow
def test_ensemble_divergence_grows():
  config = SimConfig.from_packing(500, 0.01, perturbation=1e-9, max_collisions_per_particle=20)
  results = run_ensemble(config, range(8))

  curves = []
  for result in results.values():
    series = np.array(result.divergence_series)
    x = 2 * series[:, 0] / config.n_particles
    curves.append((x, np.log(series[:, 1])))
  # Whole collisions per particle before any seed leaves the fit window
  x_end = min(x[np.argmax(np.exp(y) >= 0.1)] for x, y in curves)
  grid = np.arange(1.0, math.floor(x_end) + 1)
  average = np.mean([np.interp(grid, x, y) for x, y in curves], axis=0)
  assert len(grid) >= 2
  assert np.all(np.diff(average) >= 0)

@pytest.mark.slow
def test_conservation_over_many_events():
  config = SimConfig.from_packing(500, 0.01, seed=5)
  positions, velocities = initial_state(config, make_rng(config.seed))
  system = HardSphereSystem(positions, velocities, config.radius, config.box_length)
  last = 0.0
  for _ in range(100000):
    system.step()
    assert system.time >= last
    last = system.time
  assert system.energy_drift() < 1e-9
  assert np.all(np.abs(system.momentum_drift()) < 1e-12 * system.momentum_scale)
