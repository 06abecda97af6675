"""Constant-mass reference problems with closed-form spectra.

Six families are covered: the generalized Morse potential, its non-PT
complex variant, its PT-symmetric variant, the deformed Pöschl-Teller
potential and its non-PT and PT-symmetric variants. ``energy`` returns the
closed-form levels exactly as they are conventionally quoted for these
families; ``exact_energy`` returns the levels of
``-kinetic * Phi'' + V Phi = E Phi`` derived independently, which is what a
numerical solver must reproduce.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import (BoundStateIndexError, DomainError, SingularityError,
                     UnsupportedError)
from .specfun import jacobi, laguerre


class Family(enum.Enum):
    MORSE = "morse"
    MORSE_NON_PT = "morse_non_pt"
    MORSE_PT = "morse_pt"
    POSCHL_TELLER = "poschl_teller"
    POSCHL_TELLER_NON_PT = "poschl_teller_non_pt"
    POSCHL_TELLER_PT = "poschl_teller_pt"


MORSE_LIKE = (Family.MORSE, Family.MORSE_NON_PT, Family.MORSE_PT)
POSCHL_TELLER_LIKE = (Family.POSCHL_TELLER, Family.POSCHL_TELLER_NON_PT,
                      Family.POSCHL_TELLER_PT)
# families whose reference potential is complex for real coordinates
NON_HERMITIAN = (Family.MORSE_NON_PT, Family.MORSE_PT,
                 Family.POSCHL_TELLER_NON_PT, Family.POSCHL_TELLER_PT)


@dataclass(frozen=True)
class WavefunctionForm:
    """Free choices in the closed-form eigenfunctions.

    The defaults are the choices under which the functions solve the
    Schrödinger equation with kinetic prefactor ``kinetic`` (checked by the
    residual oracle in :mod:`pctpdm.verify`). ``WavefunctionForm.printed()``
    gives the literal transcription, which does not.

    gamma
        Morse exponent scale: ``"printed"`` is ``1/alpha**2``,
        ``"kinetic"`` is ``1/(alpha*sqrt(kinetic))``.
    eps
        ``"printed"``: ``eps**2 = -E/(2 alpha**2)``;
        ``"kinetic"``: ``eps**2 = -E/(4 kinetic alpha**2)``.
    nu
        Pöschl-Teller exponent: ``"nu1"`` = ``sqrt(1 + 8 V0/(q alpha**2))``,
        ``"nu2"`` = ``sqrt(8 V0/(q alpha**2))``, ``"shifted"`` =
        ``1 - sqrt(1 + 4 V0/(q kinetic alpha**2))``.
    eps_sign
        Sign of the Pöschl-Teller prefactor exponent, ``s**(eps_sign*eps)``.
    deformed_factor
        Use ``(1 - q s)`` rather than ``(1 - s)`` in the Pöschl-Teller factor.
    """

    gamma: str = "kinetic"
    eps: str = "kinetic"
    nu: str = "shifted"
    eps_sign: int = 1
    deformed_factor: bool = True

    @classmethod
    def printed(cls) -> "WavefunctionForm":
        return cls(gamma="printed", eps="printed", nu="nu2", eps_sign=-1,
                   deformed_factor=False)


def _arr(y):
    y = np.asarray(y, dtype=float)
    if not np.all(np.isfinite(y)):
        raise DomainError("reference potentials need finite y")
    return y


def _out(v):
    return v.item() if np.ndim(v) == 0 else v


@dataclass(frozen=True)
class ReferenceProblem:
    """A constant-mass potential with known levels.

    Use the classmethod constructors; they fill the derived strengths
    (e.g. ``V1 = (A+iB)**2`` for the non-PT Morse case).
    """

    family: Family
    alpha: float = 1.0
    V1: complex = 0.0
    V2: complex = 0.0
    V0: complex = 0.0
    qpot: complex = 1.0
    A: float | None = None
    B: float | None = None
    C: float | None = None
    omega: float | None = None
    D: float | None = None

    def __post_init__(self):
        if not isinstance(self.family, Family):
            object.__setattr__(self, "family", Family(self.family))
        if not (math.isfinite(self.alpha) and self.alpha > 0):
            raise DomainError(f"alpha must be positive, got {self.alpha}")

    # -- constructors -----------------------------------------------------

    @classmethod
    def morse(cls, alpha=1.0, V1=1.0, V2=1.0):
        return cls(Family.MORSE, alpha, V1=V1, V2=V2)

    @classmethod
    def morse_non_pt(cls, A, B, C):
        z = complex(A, B)
        return cls(Family.MORSE_NON_PT, 1.0, V1=z * z, V2=(2 * C + 1) * z,
                   A=A, B=B, C=C)

    @classmethod
    def morse_pt(cls, alpha=1.0, V1=1.0, V2=1.0):
        return cls(Family.MORSE_PT, alpha, V1=V1, V2=V2)

    @classmethod
    def morse_pt_oscillator(cls, omega, D):
        """PT Morse with ``V1 = -omega**2``, ``V2 = D`` and ``alpha = 2``."""
        return cls(Family.MORSE_PT, 2.0, V1=-omega ** 2, V2=D, omega=omega, D=D)

    @classmethod
    def poschl_teller(cls, alpha=1.0, V0=1.0, q=1.0):
        return cls(Family.POSCHL_TELLER, alpha, V0=V0, qpot=q)

    @classmethod
    def poschl_teller_non_pt(cls, alpha=1.0, V0=1.0, q=1.0):
        """Pure-imaginary strength and deformation, ``V0 -> i V0``, ``q -> i q``."""
        return cls(Family.POSCHL_TELLER_NON_PT, alpha, V0=1j * V0, qpot=1j * q)

    @classmethod
    def poschl_teller_pt(cls, alpha=1.0, V0=1.0, q=1.0):
        return cls(Family.POSCHL_TELLER_PT, alpha, V0=V0, qpot=q)

    def with_alpha(self, alpha) -> "ReferenceProblem":
        return replace(self, alpha=alpha)

    @property
    def is_hermitian(self) -> bool:
        if self.family in NON_HERMITIAN:
            return False
        if self.family is Family.MORSE:
            return complex(self.V1).imag == 0 and complex(self.V2).imag == 0
        return complex(self.V0).imag == 0 and complex(self.qpot).imag == 0

    @property
    def real_spectrum_condition(self) -> bool:
        """For the complex Pöschl-Teller case: ``Im V0 Re q == Re V0 Im q``."""
        v0, q = complex(self.V0), complex(self.qpot)
        lhs, rhs = v0.imag * q.real, v0.real * q.imag
        return abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs), abs(rhs))

    # -- potential --------------------------------------------------------

    def potential(self, y):
        """Complex potential value ``V(y)``."""
        y = _arr(y)
        a, fam = self.alpha, self.family
        with np.errstate(over="ignore", invalid="ignore"):
            if fam in (Family.MORSE, Family.MORSE_NON_PT):
                e1 = np.exp(-a * y)
                v = self.V1 * e1 * e1 - self.V2 * e1
            elif fam is Family.MORSE_PT:
                e1 = np.exp(-1j * a * y)
                v = self.V1 * e1 * e1 - self.V2 * e1
            elif fam in (Family.POSCHL_TELLER, Family.POSCHL_TELLER_NON_PT):
                # e^{-2ay}/(1+q e^{-2ay})^2 == 1/(e^{ay} + q e^{-ay})^2
                den = np.exp(a * y) + self.qpot * np.exp(-a * y)
                if np.any(np.abs(den) < 1e-300):
                    raise SingularityError("Pöschl-Teller pole")
                v = -4.0 * self.V0 / den ** 2
            else:
                q, v0 = self.qpot, self.V0
                c, s = np.cos(2 * a * y), np.sin(2 * a * y)
                num = (1 + q * q) * c + 2 * q + 1j * (q * q - 1) * s
                den = (1 + q * q) ** 2 + 4 * q * c * (1 + q * c + q * q)
                if np.any(np.abs(den) < 1e-12 * (1 + abs(q)) ** 4):
                    raise SingularityError("PT Pöschl-Teller pole")
                v = -4.0 * v0 * num / den
        return _out(np.asarray(v, dtype=complex))

    # -- spectra ----------------------------------------------------------

    def _nu1(self):
        return cmath.sqrt(1 + 8 * self.V0 / (self.qpot * self.alpha ** 2))

    def _morse_ratio(self):
        return self.V2 / (self.alpha * cmath.sqrt(self.V1))

    def max_bound_index(self) -> int | None:
        """Largest admissible level index, ``-1`` if there is none, or
        ``None`` for the PT families whose quoted levels never terminate."""
        fam = self.family
        if fam in (Family.MORSE_PT, Family.POSCHL_TELLER_PT):
            return None
        if fam is Family.MORSE:
            bound = _real(self._morse_ratio() / 2 - 0.5, "Morse strength ratio")
        elif fam is Family.MORSE_NON_PT:
            bound = float(self.C)
        else:
            if not self.real_spectrum_condition:
                raise UnsupportedError("complex Pöschl-Teller levels are not real")
            bound = (_real(self._nu1(), "Pöschl-Teller depth") - 1) / 2
        return max(math.ceil(bound) - 1, -1)

    def bound_state_count(self) -> int | None:
        nmax = self.max_bound_index()
        return None if nmax is None else nmax + 1

    def _check_level(self, n):
        if int(n) != n or n < 0:
            raise DomainError(f"level index must be a non-negative integer, got {n}")
        nmax = self.max_bound_index()
        if nmax is not None and n > nmax:
            raise BoundStateIndexError(
                f"level {n} requested but only {nmax + 1} bound states exist")

    def energy(self, n) -> complex:
        """Closed-form level ``n`` as conventionally quoted for the family."""
        self._check_level(n)
        a, fam = self.alpha, self.family
        if fam is Family.MORSE:
            e = -a * a / 4 * (self._morse_ratio() - (2 * n + 1)) ** 2
        elif fam is Family.MORSE_NON_PT:
            e = -(n - self.C) ** 2
        elif fam is Family.MORSE_PT:
            if self.omega is not None:
                e = (2 * n + 1 + self.D / (2 * self.omega)) ** 2
            else:
                e = a ** 4 * ((n + 0.5) + self.V2 / (2 * a * math.sqrt(abs(self.V1)))) ** 2
        elif fam in (Family.POSCHL_TELLER, Family.POSCHL_TELLER_NON_PT):
            e = -a * a / 4 * (-(2 * n + 1) + self._nu1()) ** 2
        else:
            e = -a * a / 4 * (2 * n + 1 + cmath.sqrt(1 + 16 * self.V0 / a ** 2)) ** 2
        return complex(e)

    def exact_energy(self, n, kinetic=0.5) -> float:
        """Level ``n`` of ``-kinetic Phi'' + V Phi = E Phi`` on the real line.

        Only for the families that are unitarily (or by a complex shift of
        the coordinate) equivalent to a real well: Morse, non-PT Morse and
        the two non-PT-symmetric Pöschl-Teller families.
        """
        a, fam = self.alpha, self.family
        if fam in (Family.MORSE, Family.MORSE_NON_PT):
            lam = _real(self.V2 / (2 * a * cmath.sqrt(kinetic * self.V1)), "Morse ratio")
            k = lam - n - 0.5
        elif fam in (Family.POSCHL_TELLER, Family.POSCHL_TELLER_NON_PT):
            g = _real(self.V0 / (self.qpot * kinetic * a * a), "Pöschl-Teller depth")
            k = (math.sqrt(1 + 4 * g) - 1) / 2 - n
        else:
            raise UnsupportedError(f"no exact real-line levels for {fam.value}")
        if int(n) != n or n < 0 or k <= 0:
            raise BoundStateIndexError(f"level {n} is not bound")
        return -kinetic * a * a * k * k

    # -- eigenfunctions ---------------------------------------------------

    def eigenfunction(self, n, y, kinetic=0.5, form: WavefunctionForm | None = None,
                      energy=None):
        """Unnormalized closed-form eigenfunction ``Phi_n(y)``.

        Available for the Morse and Pöschl-Teller families only. ``energy``
        overrides the level used to build the exponents.
        """
        form = form or WavefunctionForm()
        if self.family not in (Family.MORSE, Family.POSCHL_TELLER):
            raise UnsupportedError(f"no closed-form eigenfunctions for {self.family.value}")
        y = _arr(y)
        if energy is None:
            energy = self.energy(n)
        a = self.alpha
        eps_scale = 1 / (2 * a * a) if form.eps == "printed" else 1 / (4 * kinetic * a * a)
        eps = cmath.sqrt(-energy * eps_scale)
        if self.family is Family.MORSE:
            gamma = 1 / a ** 2 if form.gamma == "printed" else 1 / (a * math.sqrt(kinetic))
            log_s = cmath.log(cmath.sqrt(self.V1)) - a * y
            s = np.exp(log_s)
            with np.errstate(over="ignore", under="ignore", invalid="ignore"):
                phi = np.exp(2 * eps * log_s - gamma * s) * laguerre(n, 4 * eps, 2 * gamma * s)
            phi = np.where(np.isfinite(phi), phi, 0.0)
            return _out(np.asarray(phi, dtype=complex))
        q = self.qpot
        if form.nu == "nu1":
            nu = self._nu1()
        elif form.nu == "nu2":
            nu = cmath.sqrt(8 * self.V0 / (q * a * a))
        else:
            nu = 1 - cmath.sqrt(1 + 4 * self.V0 / (q * kinetic * a * a))
        qf = q if form.deformed_factor else 1.0
        log_s = -2 * a * y + 1j * math.pi           # principal log of -e^{-2ay}
        s = -np.exp(-2 * a * y)
        with np.errstate(over="ignore", under="ignore", invalid="ignore"):
            log_fac = np.log(1 - qf * s.astype(complex))
            phi = np.exp(form.eps_sign * eps * log_s + nu / 2 * log_fac) \
                * jacobi(n, 2 * eps, nu - 1, 1 - 2 * q * s)
        phi = np.where(np.isfinite(phi), phi, 0.0)
        return _out(np.asarray(phi, dtype=complex))


def _real(z, what):
    z = complex(z)
    if abs(z.imag) > 1e-12 * max(1.0, abs(z.real)):
        raise UnsupportedError(f"{what} is not real: {z}")
    return z.real
