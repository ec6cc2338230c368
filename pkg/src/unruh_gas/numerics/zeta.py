import math

from ..utils.errors import DomainError


# B_2, B_4, B_6, B_8 for the Euler-Maclaurin tail
BERNOULLI_EVEN = (1 / 6, -1 / 30, 1 / 42, -1 / 30)
# |B_10|, the first term left out
BERNOULLI_REMAINDER = 5 / 66


def _check_args(s, terms):
    if not s > 1:
        raise DomainError('zeta series needs s > 1, got {!r}'.format(s))
    if terms < 30:
        raise DomainError('zeta series needs at least 30 terms, got {}'.format(terms))

def riemann_zeta(s: float, terms: int = 64) -> float:
    """
    Riemann zeta function for real s > 1 by direct summation.

    The first `terms - 1` terms are summed explicitly and the remainder
    sum_{n >= N} n^-s is replaced by its Euler-Maclaurin expansion

        N^(1-s)/(s-1) + N^-s/2 + sum_k B_2k/(2k)! s(s+1)...(s+2k-2) N^(-s-2k+1)

    truncated after B_8. The dropped term is bounded by
    |B_10|/10! s(s+1)...(s+8) N^(-s-9) (see `zeta_remainder_bound`), below 1e-20 for
    N = 64 and s >= 2.

    Args:
        s: real argument, s > 1
        terms: N, number of explicitly handled terms (>= 30)

    Returns:
        zeta(s)
    """
    _check_args(s, terms)

    n_tail = terms
    # Sum the small terms first
    total = math.fsum(n ** -s for n in range(n_tail - 1, 0, -1))

    tail = n_tail ** (1 - s) / (s - 1) + 0.5 * n_tail ** -s
    rising = s
    for k, bernoulli in enumerate(BERNOULLI_EVEN, start=1):
        tail += bernoulli / math.factorial(2 * k) * rising * n_tail ** (-s - 2 * k + 1)
        rising *= (s + 2 * k - 1) * (s + 2 * k)
    return total + tail

def zeta_remainder_bound(s: float, terms: int = 64) -> float:
    """Magnitude of the first Euler-Maclaurin term `riemann_zeta` drops."""
    _check_args(s, terms)
    rising = 1.0
    for k in range(9):
        rising *= s + k
    return BERNOULLI_REMAINDER / math.factorial(10) * rising * terms ** (-s - 9)
