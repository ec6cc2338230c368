from collections import namedtuple
import math

from scipy.integrate import quad

from ..utils.errors import DomainError
from .zeta import riemann_zeta, zeta_remainder_bound


IntegralResult = namedtuple('IntegralResult', ('value', 'estimated_abs_error', 'method'))

ADAPTIVE = 'adaptive'
CLOSED_FORM_FACTORIAL = 'closed_form_factorial'
CLOSED_FORM_ZETA = 'closed_form_zeta'
INTEGRAL_METHODS = (ADAPTIVE, CLOSED_FORM_FACTORIAL, CLOSED_FORM_ZETA)

MAX_POWER = 16
ADAPTIVE_REL_TOL = 1e-12
# Upper cut where u^p e^-u has fallen below this fraction of its peak
CUTOFF_FRACTION = 1e-18


def _check_args(alpha, p):
    if not alpha > 0 or not math.isfinite(alpha):
        raise DomainError('alpha must be positive and finite, got {!r}'.format(alpha))
    if int(p) != p or not 1 <= p <= MAX_POWER:
        raise DomainError('p must be an integer in [1, {}], got {!r}'.format(MAX_POWER, p))

def bose_integrand(u, p):
    """u^p / (e^u - 1), continued by u^(p-1) at u -> 0."""
    if u < 1e-8:
        return u ** (p - 1) * (1 - 0.5 * u)
    return u ** p / math.expm1(u)

def integrand_peak(alpha: float, p: int) -> float:
    # Maximiser of x^p e^(-alpha x)
    if not alpha > 0:
        raise DomainError('alpha must be positive, got {!r}'.format(alpha))
    if not p >= 1:
        raise DomainError('p must be >= 1, got {!r}'.format(p))
    return p / alpha

def upper_cutoff(p: int) -> float:
    """Smallest U (on a 1/8 grid above p) with U^p e^-U < 1e-18 p^p e^-p."""
    log_peak = p * math.log(p) - p
    log_target = log_peak + math.log(CUTOFF_FRACTION)
    cut = p + 8.0
    while p * math.log(cut) - cut > log_target:
        cut += 0.125
    return cut

def _scaled_integral(p):
    """Integral of u^p/(e^u - 1) over (0, inf) with an error estimate."""
    cut = upper_cutoff(p)
    value, err = quad(bose_integrand, 0.0, cut, args=(p,), points=[float(p)],
                      epsabs=0.0, epsrel=ADAPTIVE_REL_TOL, limit=200)
    # Tail above the cut, bounded by the Gamma-function tail of u^p e^-u
    tail = cut ** p * math.exp(-cut) * (1 + p / (cut - p))
    return value, err + tail

def bose_power_integral(alpha: float, p: int = 8, method: str = ADAPTIVE) -> IntegralResult:
    """
    Evaluates I(alpha, p) = integral_0^inf x^p / (exp(alpha x) - 1) dx.

    The adaptive branch integrates in u = alpha x and rescales by
    alpha^-(p+1) in log space, so nothing overflows for alpha up to 1e15.

    Args:
        alpha: positive scale
        p: integer power in [1, 16]
        method: 'adaptive', 'closed_form_factorial' (p!/alpha^(p+1), the
            -1 in the denominator dropped) or 'closed_form_zeta'
            (Gamma(p+1) zeta(p+1)/alpha^(p+1), exact)

    Returns:
        IntegralResult
    """
    _check_args(alpha, p)
    p = int(p)
    log_scale = -(p + 1) * math.log(alpha)

    if method == ADAPTIVE:
        value, err = _scaled_integral(p)
        scale = math.exp(log_scale)
        return IntegralResult(value * scale, err * scale, ADAPTIVE)
    elif method == CLOSED_FORM_FACTORIAL:
        value = math.exp(math.lgamma(p + 1) + log_scale)
        return IntegralResult(value, 0.0, CLOSED_FORM_FACTORIAL)
    elif method == CLOSED_FORM_ZETA:
        prefactor = math.exp(math.lgamma(p + 1) + log_scale)
        value = prefactor * riemann_zeta(p + 1)
        return IntegralResult(value, prefactor * zeta_remainder_bound(p + 1), CLOSED_FORM_ZETA)
    raise DomainError('Unknown integration method {!r}, expected one of {}'.format(
        method, ', '.join(INTEGRAL_METHODS)))

def relative_difference(a: float, b: float) -> float:
    return abs(a - b) / abs(b)
