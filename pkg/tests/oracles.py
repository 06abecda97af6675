"""Brute-force reference implementations used only by the tests."""

import math


def _binom(top, k):
    """Generalized binomial ``C(top, k)`` for integer ``k >= 0``."""
    out = 1.0 + 0j
    for j in range(1, k + 1):
        out *= (top - k + j) / j
    return out


def laguerre_sum(n, a, x):
    return sum((-1) ** k * _binom(n + a, n - k) * x ** k / math.factorial(k)
               for k in range(n + 1))


def jacobi_sum(n, a, b, x):
    return sum(_binom(n + a, n - s) * _binom(n + b, s)
               * ((x - 1) / 2) ** s * ((x + 1) / 2) ** (n - s) for s in range(n + 1))


def laguerre_terms(n, a, x):
    return sum(abs(_binom(n + a, n - k) * x ** k / math.factorial(k)) for k in range(n + 1))


def jacobi_terms(n, a, b, x):
    return sum(abs(_binom(n + a, n - s) * _binom(n + b, s)
                   * ((x - 1) / 2) ** s * ((x + 1) / 2) ** (n - s)) for s in range(n + 1))
