"""Point canonical transformation from a constant-mass reference problem to a
position-dependent-mass target problem.

With ``y = f(x)``, ``f'^2 = m`` and ``psi(x) = m^{1/4} Phi(f(x))`` the
BenDaniel-Duke equation ``-kinetic (psi'/m)' + V psi = E psi`` becomes the
reference equation provided

    V(x) = V_ref(f(x)) + sigma * kinetic/(4 m) * [m''/m - 7/4 (m'/m)^2]

with ``sigma = +1``. ``SignConvention.AS_PRINTED`` keeps the opposite sign
that is commonly printed for this shift so both can be tested; for
``kinetic = 1/2`` the coefficient is the familiar ``1/(8m)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError, RangeError
from .mass import MassDistribution, MassKind
from .numerics import Grid, derivative, integrate, root_find
from .potentials import Family, ReferenceProblem, WavefunctionForm


class SignConvention(enum.Enum):
    AS_PRINTED = "printed"
    CORRECTED = "corrected"

    @property
    def sigma(self) -> int:
        return -1 if self is SignConvention.AS_PRINTED else 1


class NumericMass:
    """Arbitrary smooth positive mass handled purely numerically.

    Derivatives come from central differences, the map from adaptive
    quadrature of ``sqrt(m)`` anchored at ``anchor`` and the inverse from
    bisection. Slow, but independent of any closed form.
    """

    def __init__(self, m: Callable[[float], float], anchor: float = 0.0, tol: float = 1e-11):
        self.m = m
        self.anchor = anchor
        self.tol = tol

    def mass(self, x):
        return np.vectorize(lambda t: float(self.m(t)))(x)[()]

    def derivs(self, x):
        def one(t):
            return (self.m(t), derivative(self.m, t, 1), derivative(self.m, t, 2))
        m, m1, m2 = np.vectorize(one)(np.asarray(x, dtype=float))
        return m[()], m1[()], m2[()]

    def _f(self, t):
        g = lambda s: math.sqrt(self.m(s))
        if t >= self.anchor:
            return integrate(g, self.anchor, t, self.tol)
        return -integrate(g, t, self.anchor, self.tol)

    def mapping(self, x):
        return np.vectorize(self._f)(np.asarray(x, dtype=float))[()]

    def mapping_range(self):
        return -math.inf, math.inf

    def inverse(self, y):
        def one(target):
            lo, hi = self.anchor - 1.0, self.anchor + 1.0
            for _ in range(200):
                if self._f(lo) <= target <= self._f(hi):
                    return root_find(lambda t: self._f(t) - target, lo, hi, 1e-12)
                lo, hi = self.anchor - 2 * (self.anchor - lo), self.anchor + 2 * (hi - self.anchor)
            raise RangeError(f"y={target} outside the numerically reachable range")
        return np.vectorize(one)(np.asarray(y, dtype=float))[()]


def correction_term(dist, x, sign=SignConvention.CORRECTED, kinetic=0.5):
    """Mass-induced potential shift ``sigma kinetic/(4m) [m''/m - 7/4 (m'/m)^2]``."""
    m, m1, m2 = dist.derivs(x)
    r1, r2 = np.asarray(m1) / m, np.asarray(m2) / m
    out = sign.sigma * kinetic / (4.0 * np.asarray(m)) * (r2 - 1.75 * r1 * r1)
    return out.item() if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class TargetSystem:
    """The variable-mass image of a reference problem.

    Evaluation is lazy and pointwise; ``grid`` only records the working
    domain for solvers and oracles.
    """

    dist: MassDistribution
    ref: ReferenceProblem
    sign: SignConvention = SignConvention.CORRECTED
    grid: Grid | None = None
    kinetic: float = 0.5
    form: WavefunctionForm = field(default_factory=WavefunctionForm)

    def correction(self, x):
        return correction_term(self.dist, x, self.sign, self.kinetic)

    def potential(self, x):
        v = np.asarray(self.ref.potential(self.dist.mapping(x))) + self.correction(x)
        return v.item() if np.ndim(v) == 0 else v

    def energy(self, n) -> complex:
        return self.ref.energy(n)

    def wavefunction(self, n, x, energy=None):
        """Unnormalized ``m(x)^{1/4} Phi_n(f(x))``."""
        m = np.asarray(self.dist.mass(x), dtype=float)
        phi = self.ref.eigenfunction(n, self.dist.mapping(x), self.kinetic, self.form, energy)
        out = m ** 0.25 * np.asarray(phi)
        return out.item() if np.ndim(out) == 0 else out


def build_target(dist, ref, sign=SignConvention.CORRECTED, grid=None, kinetic=0.5,
                 form=None) -> TargetSystem:
    """Wire a :class:`TargetSystem`; checks the domain maps inside ``f``'s range."""
    if not kinetic > 0:
        raise DomainError("kinetic prefactor must be positive")
    if grid is not None:
        ends = np.array([grid.x_min, grid.x_max])
        with np.errstate(over="ignore"):
            y = np.asarray(dist.mapping(ends), dtype=float)
            m = np.asarray(dist.mass(ends), dtype=float)
        lo, hi = dist.mapping_range()
        if not (np.all(np.isfinite(y)) and np.all(y > lo) and np.all(y < hi)):
            raise RangeError(f"domain [{grid.x_min}, {grid.x_max}] leaves the mapping range")
        if not (np.all(np.isfinite(m)) and np.all(m > 0)):
            raise RangeError("mass is not positive and finite on the domain")
    return TargetSystem(dist, ref, sign, grid, kinetic, form or WavefunctionForm())


def paper_mode(dist: MassDistribution, ref: ReferenceProblem) -> ReferenceProblem:
    """Tie the reference ``alpha`` to the mass ``alpha``.

    The non-PT Morse family (``alpha = 1`` by construction) and the PT Morse
    oscillator (``alpha = 2``) keep their fixed value.
    """
    if dist.kind is MassKind.CONSTANT:
        return ref
    if ref.family is Family.MORSE_NON_PT or ref.omega is not None:
        return ref
    return ref.with_alpha(dist.alpha)


def grid_from_reference(dist, y_min, y_max, N) -> Grid:
    """Grid whose end points map onto ``[y_min, y_max]`` in the reference coordinate."""
    lo, hi = dist.mapping_range()
    if not (lo < y_min < y_max < hi):
        raise RangeError(f"[{y_min}, {y_max}] not inside the mapping range ({lo}, {hi})")
    return Grid(float(dist.inverse(y_min)), float(dist.inverse(y_max)), N)
