"""Small numerical kernels: grids, adaptive Simpson quadrature, central
differences and bisection."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import BracketError, ConvergenceError, DomainError

MAX_DEPTH = 40


@dataclass(frozen=True)
class Grid:
    """Uniform grid of ``N`` interior points on ``(x_min, x_max)``.

    The end points carry the Dirichlet boundary values and are not part of
    :meth:`points`.
    """

    x_min: float
    x_max: float
    N: int

    def __post_init__(self):
        if not (math.isfinite(self.x_min) and math.isfinite(self.x_max)):
            raise DomainError("grid bounds must be finite")
        if not self.x_min < self.x_max:
            raise DomainError(f"empty grid: x_min={self.x_min} >= x_max={self.x_max}")
        if int(self.N) != self.N or self.N < 16:
            raise DomainError(f"grid needs an integer N >= 16, got {self.N}")

    @property
    def h(self) -> float:
        return (self.x_max - self.x_min) / (self.N + 1)

    def points(self) -> np.ndarray:
        return self.x_min + self.h * np.arange(1, self.N + 1)

    def midpoints(self) -> np.ndarray:
        """The ``N + 1`` half-integer points ``x_{i+1/2}``, i = 0..N."""
        return self.x_min + self.h * (np.arange(self.N + 1) + 0.5)

    def refined(self, factor: int = 2) -> "Grid":
        """Same interval with the spacing divided by ``factor``."""
        return Grid(self.x_min, self.x_max, factor * (self.N + 1) - 1)

    def scaled(self, factor: float) -> "Grid":
        """Interval enlarged about its centre by ``factor`` at equal spacing."""
        c = 0.5 * (self.x_min + self.x_max)
        half = 0.5 * (self.x_max - self.x_min) * factor
        n = int(round(2 * half / self.h)) - 1
        return Grid(c - half, c + half, n)


def _simpson(fa, fm, fb, a, b):
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb)


def integrate(f: Callable[[float], float], a: float, b: float, tol: float = 1e-10) -> float:
    """Adaptive Simpson quadrature of ``f`` over ``[a, b]``.

    Panels are bisected until the Richardson error estimate on each panel is
    below its share of ``tol``. Raises :class:`ConvergenceError` when a panel
    needs more than 40 levels of bisection.
    """
    if a == b:
        return 0.0
    if a > b:
        raise DomainError("integrate expects a <= b")
    m = 0.5 * (a + b)
    fa, fm, fb = f(a), f(m), f(b)
    whole = _simpson(fa, fm, fb, a, b)
    total = 0.0
    # explicit stack instead of recursion: (a, b, fa, fm, fb, whole, tol, depth)
    stack = [(a, b, fa, fm, fb, whole, tol, 0)]
    while stack:
        a, b, fa, fm, fb, whole, eps, depth = stack.pop()
        m = 0.5 * (a + b)
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        flm, frm = f(lm), f(rm)
        left = _simpson(fa, flm, fm, a, m)
        right = _simpson(fm, frm, fb, m, b)
        delta = left + right - whole
        if abs(delta) <= 15.0 * eps:
            total += left + right + delta / 15.0
        elif depth >= MAX_DEPTH:
            raise ConvergenceError(
                f"adaptive Simpson exceeded depth {MAX_DEPTH} on [{a}, {b}]")
        else:
            stack.append((m, b, fm, frm, fb, right, 0.5 * eps, depth + 1))
            stack.append((a, m, fa, flm, fm, left, 0.5 * eps, depth + 1))
    return total


def default_step(x: float, order: int = 1) -> float:
    scale = 1e-5 if order == 1 else 1e-4
    return scale * max(1.0, abs(x))


def derivative(f: Callable[[float], float], x: float, order: int = 1,
               h: float | None = None) -> float:
    """Second-order central difference of order 1 or 2."""
    if h is None:
        h = default_step(x, order)
    if h <= 0:
        raise DomainError("step must be positive")
    if order == 1:
        return (f(x + h) - f(x - h)) / (2.0 * h)
    if order == 2:
        return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)
    raise DomainError(f"derivative order must be 1 or 2, got {order}")


def root_find(f: Callable[[float], float], lo: float, hi: float,
              tol: float = 1e-12) -> float:
    """Bisection root of ``f`` in ``[lo, hi]``.

    Stops when the bracket is narrower than ``tol`` or the midpoint hits an
    exact zero.
    """
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if flo * fhi > 0:
        raise BracketError(f"no sign change on [{lo}, {hi}]")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fmid = f(mid)
        if fmid == 0:
            return mid
        if (fmid < 0) == (flo < 0):
            lo, flo = mid, fmid
        else:
            hi = mid
    return 0.5 * (lo + hi)
