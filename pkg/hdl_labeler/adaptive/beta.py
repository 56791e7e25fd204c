"""Regularized incomplete beta function for integer parameters.

For integers a, b >= 1, I_x(a, b) equals the probability that a
Binomial(a + b - 1, x) variable is at least a. Up to ``EXACT_TRIALS`` trials
the binomial coefficients are exact integers; beyond that they no longer fit
in a float and every term is evaluated in log space.
"""
import math
import numbers

from ..utils.errors import DomainError

# comb(1000, 500) ~ 2.7e299 still converts to float; comb(1030, 515) does not
EXACT_TRIALS = 1000


def _check_positive_int(name: str, value) -> int:
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise DomainError(f"{name} must be a positive integer, got {value!r}")
    if value < 1:
        raise DomainError(f"{name} must be a positive integer, got {value}")
    return int(value)


def _log_binomial_term(n: int, j: int, log_x: float, log_y: float) -> float:
    log_comb = math.lgamma(n + 1) - math.lgamma(j + 1) - math.lgamma(n - j + 1)
    return math.exp(log_comb + j * log_x + (n - j) * log_y)


def reg_inc_beta(a: int, b: int, x: float) -> float:
    """I_x(a, b) = sum_{j=a}^{a+b-1} C(a+b-1, j) x^j (1-x)^(a+b-1-j)."""
    a = _check_positive_int("a", a)
    b = _check_positive_int("b", b)
    x = float(x)
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"x must lie in [0, 1], got {x}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0

    n = a + b - 1
    y = 1.0 - x
    if n <= EXACT_TRIALS:
        total = math.fsum(math.comb(n, j) * x**j * y ** (n - j) for j in range(a, n + 1))
    else:
        log_x, log_y = math.log(x), math.log1p(-x)
        total = math.fsum(_log_binomial_term(n, j, log_x, log_y) for j in range(a, n + 1))
    return min(1.0, max(0.0, total))


def tolerated_errors(k: int) -> int:
    """k' = ceil((k + 1) / 2) - 1, the number of wrong votes a k-vote can absorb."""
    return -(-(k + 1) // 2) - 1


def beta_factor(k: int, e: float) -> float:
    """Vote-success factor I_{1-e}(k + 1 - k', k' + 1) for a committee of k neighbors."""
    k = _check_positive_int("k", k)
    k_prime = tolerated_errors(k)
    return reg_inc_beta(k + 1 - k_prime, k_prime + 1, 1.0 - e)
