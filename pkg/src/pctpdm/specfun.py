"""Generalized Laguerre and Jacobi polynomials by upward three-term recurrence.

Order parameters and arguments may be complex. Degrees are small (bound
state counts), so the upward recurrence is used without asymptotic
switching; it is accurate to a few ulps times the degree for ``n <= 64``.
"""

from __future__ import annotations

import numpy as np

from .errors import DegenerateParameterError, DomainError

MAX_DEGREE = 64


def _check_degree(n):
    if int(n) != n or n < 0:
        raise DomainError(f"degree must be a non-negative integer, got {n}")
    if n > MAX_DEGREE:
        raise DomainError(f"degree {n} above the supported envelope {MAX_DEGREE}")
    return int(n)


def _out(v):
    return v.item() if np.ndim(v) == 0 else v


def laguerre(n, a, x):
    """Generalized Laguerre polynomial ``L_n^a(x)``.

    Uses ``(k+1) L_{k+1} = (2k+1+a-x) L_k - (k+a) L_{k-1}``.
    """
    n = _check_degree(n)
    x = np.asarray(x, dtype=complex)
    prev = np.ones_like(x)
    if n == 0:
        return _out(prev)
    cur = 1.0 + a - x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + a - x) * cur - (k + a) * prev) / (k + 1)
    return _out(cur)


def jacobi(n, a, b, x):
    """Jacobi polynomial ``P_n^{(a,b)}(x)``.

    Raises :class:`DegenerateParameterError` when ``2k(k+a+b)(2k+a+b-2)``
    vanishes for some ``2 <= k <= n``.
    """
    n = _check_degree(n)
    x = np.asarray(x, dtype=complex)
    prev = np.ones_like(x)
    if n == 0:
        return _out(prev)
    ab = a + b
    cur = 0.5 * (a - b) + (1.0 + 0.5 * ab) * x
    for k in range(2, n + 1):
        c1 = 2 * k * (k + ab) * (2 * k + ab - 2)
        if c1 == 0:
            raise DegenerateParameterError(
                f"Jacobi recurrence degenerates at k={k} for a={a}, b={b}")
        c2 = (2 * k + ab - 1) * (a * a - b * b)
        c3 = (2 * k + ab - 2) * (2 * k + ab - 1) * (2 * k + ab)
        c4 = 2 * (k + a - 1) * (k + b - 1) * (2 * k + ab)
        prev, cur = cur, ((c2 + c3 * x) * cur - c4 * prev) / c1
    return _out(cur)
