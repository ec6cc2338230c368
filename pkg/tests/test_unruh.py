import math

import pytest
from scipy.integrate import quad

from unruh_gas.channels import (UnruhChannel, closed_form_delta_theta0,
                                conducting_sphere_cross_section, estimate_unruh,
                                estimate_unruh_calibrated, mean_occupation, peak_wavelength,
                                scattering_rate, unruh_temperature)
from unruh_gas.gases import collision_acceleration, derive_state
from unruh_gas.numerics import ADAPTIVE
from unruh_gas.utils import C, DomainError, HBAR, K_B, ValidityError


def test_unruh_temperature():
  assert unruh_temperature(0.0) == 0.0
  assert unruh_temperature(1e20) == pytest.approx(0.4054, rel=1e-3)
  assert unruh_temperature(2 * math.pi * K_B * C / HBAR) == pytest.approx(1.0, rel=1e-12)
  with pytest.raises(DomainError):
    unruh_temperature(-1.0)

def _omega_for(exponent, a=1e20):
  return exponent * a / (2 * math.pi * C)

def test_mean_occupation():
  assert mean_occupation(_omega_for(math.log(2)), 1e20) == pytest.approx(1.0, rel=1e-12)
  assert mean_occupation(_omega_for(math.log(1.5)), 1e20) == pytest.approx(2.0, rel=1e-12)
  assert mean_occupation(_omega_for(40.0), 1e20) == pytest.approx(4.248e-18, rel=1e-3)

def test_mean_occupation_asymptotic_branch():
  exact = 1 / math.expm1(700.0)
  assert mean_occupation(_omega_for(700.0), 1e20) == pytest.approx(exact, rel=1e-12)
  assert mean_occupation(_omega_for(701.0), 1e20) == pytest.approx(math.exp(-701.0), rel=1e-12)
  assert mean_occupation(_omega_for(1e4), 1e20) == 0.0

@pytest.mark.parametrize('omega, a', [(0.0, 1e20), (1.0, 0.0), (-1.0, 1e20)])
def test_mean_occupation_domain(omega, a):
  with pytest.raises(DomainError):
    mean_occupation(omega, a)

def test_cross_section():
  assert conducting_sphere_cross_section(1e-3, 1.0) == pytest.approx(1.0472e-11, rel=1e-4)
  ratio = conducting_sphere_cross_section(2e-3, 1.0) / conducting_sphere_cross_section(1e-3, 1.0)
  assert ratio == pytest.approx(16, rel=1e-12)
  with pytest.raises(ValidityError):
    conducting_sphere_cross_section(0.1, 1.0)

def test_cross_section_at_injected_wavenumber(n2):
  assert conducting_sphere_cross_section(0.007, n2.radius) == pytest.approx(1.007978e-66, rel=1e-5)
  assert peak_wavelength(0.007) == pytest.approx(897.6, rel=1e-4)

def test_stp_estimate(n2, n2_stp):
  est = estimate_unruh(n2_stp)
  # Within 20% of the quoted alpha ~ 2e12
  assert abs(est.alpha - 2e12) / 2e12 < 0.2
  assert est.alpha == pytest.approx(2.3218e12, rel=1e-4)
  assert est.alpha == pytest.approx(
    2 * math.pi * C ** 2 / (est.acceleration * n2.radius), rel=1e-12)
  assert est.acceleration == collision_acceleration(n2_stp)
  assert est.peak_wavenumber == pytest.approx(0.01863, rel=1e-3)
  assert est.peak_wavenumber * est.peak_wavelength == pytest.approx(2 * math.pi, rel=1e-12)
  assert est.rmv_over_hbar == pytest.approx(40.2, rel=1e-2)
  assert math.log(est.delta_theta0) == pytest.approx(-120.18, abs=0.02)
  for value in (est.acceleration, est.unruh_temperature, est.alpha, est.delta_p_squared,
                est.delta_theta0):
    assert value > 0 and math.isfinite(value)

@pytest.mark.parametrize('temperature', [100.0, 273.15, 550.0, 1000.0])
@pytest.mark.parametrize('radius', [1e-10, 2.5e-10, 5e-10])
def test_matches_closed_form(n2, temperature, radius):
  state = derive_state(n2._replace(radius=radius), temperature, 1e5)
  est = estimate_unruh(state)
  closed = closed_form_delta_theta0(est.rmv_over_hbar, est.alpha, state.v_rms)
  assert est.delta_theta0 == pytest.approx(closed, rel=1e-6)

def test_direct_temperature_form(n2_stp):
  # (hbar/(r m v)) sqrt(8! 5c/(3 pi v)) (3 k_B T/(2 pi m c^2))^(9/2)
  state = n2_stp
  m, r, v, t = state.species.mass, state.species.radius, state.v_rms, state.temperature
  direct = (HBAR / (r * m * v)) * math.sqrt(math.factorial(8) * 5 * C / (3 * math.pi * v)) \
    * (3 * K_B * t / (2 * math.pi * m * C ** 2)) ** 4.5
  assert estimate_unruh(state).delta_theta0 == pytest.approx(direct, rel=1e-6)

def test_adaptive_integral_changes_little(n2_stp):
  factorial = estimate_unruh(n2_stp).delta_theta0
  adaptive = estimate_unruh(n2_stp, ADAPTIVE).delta_theta0
  assert adaptive > factorial
  assert adaptive / factorial - 1 < 0.0015

def test_mode_integral(n2, n2_stp):
  est = estimate_unruh(n2_stp)
  r, v = n2.radius, n2_stp.v_rms
  tau = r / v

  def weight(k):
    dp_k = HBAR ** 2 * k ** 2 * scattering_rate(k, r, est.acceleration) * tau
    return dp_k * 4 * math.pi * k ** 2 / (2 * math.pi) ** 3 / est.delta_p_squared

  k_max = 60 / (est.alpha * r)
  total, _ = quad(weight, 0.0, k_max, points=[est.peak_wavenumber], epsrel=1e-10, limit=200)
  # The mode integral keeps the -1 of the Bose factor
  zeta_9 = 1.0020083928
  assert total == pytest.approx(zeta_9, rel=1e-6)

def test_calibrated_estimate():
  est = estimate_unruh_calibrated(103, 2e12, 273.15, 493.17, 1.85e-10)
  assert est.rmv_over_hbar == pytest.approx(103, rel=1e-12)
  assert est.alpha == 2e12
  assert 1e-53 < est.delta_theta0 < 9e-53

def test_calibrated_alpha_from_temperature(n2_stp):
  est = estimate_unruh(n2_stp)
  calibrated = estimate_unruh_calibrated(est.rmv_over_hbar, None, n2_stp.temperature,
                                         n2_stp.v_rms, n2_stp.species.radius)
  assert calibrated.alpha == pytest.approx(est.alpha, rel=1e-9)
  assert calibrated.delta_theta0 == pytest.approx(est.delta_theta0, rel=1e-9)

def test_relativistic_guard():
  with pytest.raises(ValidityError):
    estimate_unruh_calibrated(103, 10.0, 273.15, 493.17, 1.85e-10)
  with pytest.raises(DomainError):
    estimate_unruh_calibrated(-1, 2e12, 273.15, 493.17, 1.85e-10)

def test_channel_wrapper(n2_stp):
  channel = UnruhChannel()
  assert channel.name == 'unruh'
  assert channel.delta_theta0(n2_stp) == estimate_unruh(n2_stp).delta_theta0

def test_pure_function_of_inputs(n2):
  first = estimate_unruh(derive_state(n2, 300.0, 1e5))
  estimate_unruh(derive_state(n2, 600.0, 1e5))
  assert estimate_unruh(derive_state(n2, 300.0, 1e5)) == first
  ratio = math.log(estimate_unruh(derive_state(n2, 600.0, 1e5)).delta_theta0) \
    - math.log(first.delta_theta0)
  # T^(9/2) from alpha, T^(-3/4) from the speed
  assert ratio == pytest.approx(3.75 * math.log(2), rel=1e-9)
