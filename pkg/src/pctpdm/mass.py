"""Position-dependent mass profiles and their coordinate maps.

Each profile supplies ``m(x)``, its first two derivatives and the map
``y = f(x)`` with ``f' = sqrt(m)`` that carries the variable-mass problem
onto a constant-mass one, together with the inverse map.

All methods accept scalars or numpy arrays.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, RangeError


class MassKind(enum.Enum):
    CONSTANT = "constant"
    VANISHING = "vanishing"                    # alpha^2 / (x^2 + q)
    SQUARED_LORENTZIAN = "squared_lorentzian"  # alpha^2 / (q + x^2)^2
    EXPONENTIAL = "exponential"                # exp(-alpha x)


def _finite(x):
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise DomainError("mass profiles are only defined for finite x")
    return x


def _out(v):
    return v.item() if np.ndim(v) == 0 else v


@dataclass(frozen=True)
class MassDistribution:
    """One of the closed-form mass profiles.

    ``alpha`` is the deformation scale and ``q`` the regularising offset of
    the two rational profiles. ``CONSTANT`` is the degenerate ``m = 1`` case
    in which the transformation reduces to the identity.
    """

    kind: MassKind
    alpha: float = 1.0
    q: float = 1.0

    def __post_init__(self):
        if not isinstance(self.kind, MassKind):
            object.__setattr__(self, "kind", MassKind(self.kind))
        if not (math.isfinite(self.alpha) and self.alpha > 0):
            raise DomainError(f"alpha must be positive, got {self.alpha}")
        if not (math.isfinite(self.q) and self.q > 0):
            raise DomainError(f"q must be positive, got {self.q}")

    @classmethod
    def constant(cls) -> "MassDistribution":
        return cls(MassKind.CONSTANT)

    @classmethod
    def vanishing(cls, alpha=1.0, q=1.0) -> "MassDistribution":
        return cls(MassKind.VANISHING, alpha, q)

    @classmethod
    def squared_lorentzian(cls, alpha=1.0, q=1.0) -> "MassDistribution":
        return cls(MassKind.SQUARED_LORENTZIAN, alpha, q)

    @classmethod
    def exponential(cls, alpha=1.0) -> "MassDistribution":
        return cls(MassKind.EXPONENTIAL, alpha)

    def mass(self, x):
        return self.derivs(x)[0]

    def derivs(self, x):
        """Return ``(m, m', m'')`` at ``x``."""
        x = _finite(x)
        a2, q = self.alpha ** 2, self.q
        if self.kind is MassKind.CONSTANT:
            m, m1, m2 = np.ones_like(x), np.zeros_like(x), np.zeros_like(x)
        elif self.kind is MassKind.VANISHING:
            u = x * x + q
            m = a2 / u
            m1 = -2.0 * a2 * x / u ** 2
            m2 = a2 * (6.0 * x * x - 2.0 * q) / u ** 3
        elif self.kind is MassKind.SQUARED_LORENTZIAN:
            u = x * x + q
            m = a2 / u ** 2
            m1 = -4.0 * a2 * x / u ** 3
            m2 = a2 * (20.0 * x * x - 4.0 * q) / u ** 4
        else:
            m = np.exp(-self.alpha * x)
            m1 = -self.alpha * m
            m2 = a2 * m
        return _out(m), _out(m1), _out(m2)

    def mapping(self, x):
        """The map ``y = f(x)``, an antiderivative of ``sqrt(m)``.

        Integration constants: ``f(0) = 0`` for the rational profiles when
        ``q = 1``; in general ``f(x) = alpha*ln(x + sqrt(x^2 + q))`` for the
        vanishing profile and ``f(0) = 0`` for the squared Lorentzian. The
        exponential profile uses ``f = -(2/alpha) exp(-alpha x / 2)``.
        """
        x = _finite(x)
        a, q = self.alpha, self.q
        if self.kind is MassKind.CONSTANT:
            y = x.copy()
        elif self.kind is MassKind.VANISHING:
            # ln(x + sqrt(x^2+q)) without cancellation for x << 0
            y = a * (np.arcsinh(x / math.sqrt(q)) + 0.5 * math.log(q))
        elif self.kind is MassKind.SQUARED_LORENTZIAN:
            sq = math.sqrt(q)
            y = a / sq * np.arctan(x / sq)
        else:
            y = -2.0 / a * np.exp(-0.5 * a * x)
        return _out(y)

    def mapping_range(self) -> tuple[float, float]:
        """Open interval covered by :meth:`mapping` over the real line."""
        if self.kind is MassKind.SQUARED_LORENTZIAN:
            half = self.alpha * math.pi / (2.0 * math.sqrt(self.q))
            return -half, half
        if self.kind is MassKind.EXPONENTIAL:
            return -math.inf, 0.0
        return -math.inf, math.inf

    def inverse(self, y):
        """Inverse of :meth:`mapping`; raises :class:`RangeError` outside its range."""
        y = _finite(y)
        lo, hi = self.mapping_range()
        if np.any(y <= lo) or np.any(y >= hi):
            raise RangeError(
                f"{self.kind.value} mapping covers ({lo}, {hi}); got y outside it")
        a, q = self.alpha, self.q
        if self.kind is MassKind.CONSTANT:
            x = y.copy()
        elif self.kind is MassKind.VANISHING:
            # (exp(y/a) - q exp(-y/a)) / 2, written to avoid overflow
            x = math.sqrt(q) * np.sinh(y / a - 0.5 * math.log(q))
        elif self.kind is MassKind.SQUARED_LORENTZIAN:
            sq = math.sqrt(q)
            x = sq * np.tan(y * sq / a)
        else:
            x = -2.0 / a * np.log(-0.5 * a * y)
        return _out(x)
