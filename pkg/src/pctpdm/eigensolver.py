"""Finite-difference eigensolvers used as independent oracles.

The BenDaniel-Duke operator ``-kinetic d/dx (1/m) d/dx + V`` is discretized
in flux form on a uniform grid with Dirichlet ends:

    (H psi)_i = -kinetic [a_{i+1/2}(psi_{i+1} - psi_i)
                          - a_{i-1/2}(psi_i - psi_{i-1})] / h^2 + V_i psi_i

with ``a = 1/m`` at the half points. For real ``V`` the matrix is exactly
symmetric tridiagonal and its lowest eigenvalues are found by Sturm-sequence
bisection. Complex ``V`` goes through a dense general eigensolver.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import BoundStateIndexError, ConvergenceError, DomainError
from .numerics import Grid


class Classification(enum.Enum):
    ALL_REAL = "all_real"
    CONJUGATE_PAIRS = "conjugate_pairs"
    MIXED = "mixed"


class Scheme(enum.Enum):
    FLUX_FD2 = "flux_fd2"
    NON_SELF_ADJOINT_FD2 = "non_self_adjoint_fd2"


@dataclass(frozen=True)
class SpectrumReport:
    eigenvalues: np.ndarray
    classification: Classification
    tol: float
    grid: Grid
    scheme: Scheme

    @property
    def real(self) -> np.ndarray:
        return np.real(self.eigenvalues)

    @property
    def max_imag(self) -> float:
        return float(np.max(np.abs(np.imag(self.eigenvalues)), initial=0.0))


def classify(values, tol=1e-8, pool=None) -> Classification:
    """Real / conjugate-pair classification of ``values``.

    A value is real when ``|Im| <= tol * max(1, |Re|)``. Partners for the
    non-real ones are searched in ``pool`` (defaults to ``values``).
    """
    values = np.asarray(values, dtype=complex)
    pool = values if pool is None else np.asarray(pool, dtype=complex)
    scale = tol * np.maximum(1.0, np.abs(values.real))
    is_real = np.abs(values.imag) <= scale
    if np.all(is_real):
        return Classification.ALL_REAL
    paired = all(np.min(np.abs(pool - np.conj(v))) <= s * 10 + 1e-12
                 for v, s in zip(values[~is_real], scale[~is_real]))
    if paired and not np.any(is_real):
        return Classification.CONJUGATE_PAIRS
    return Classification.MIXED


def _mass_on(dist, x):
    if dist is None:
        return np.ones_like(x)
    m = np.asarray(dist.mass(x), dtype=float)
    if not (np.all(np.isfinite(m)) and np.all(m > 0)):
        raise DomainError("mass must be positive and finite on the grid")
    return m


def flux_matrix(dist, v, grid: Grid, kinetic=0.5):
    """Diagonal and off-diagonal of the flux-form Hamiltonian.

    ``v`` holds the potential at the interior points; its dtype (real or
    complex) carries through to the diagonal.
    """
    h2 = grid.h ** 2
    a = 1.0 / _mass_on(dist, grid.midpoints())
    diag = kinetic * (a[:-1] + a[1:]) / h2 + np.asarray(v)
    off = -kinetic * a[1:-1] / h2
    return diag, off


def _sturm_count(d, e2, sigma):
    """Number of eigenvalues below ``sigma`` (LDL^T inertia)."""
    count = 0
    q = d[0] - sigma
    if q < 0:
        count += 1
    for i in range(1, len(d)):
        if q == 0:
            q = 1e-300
        q = d[i] - sigma - e2[i - 1] / q
        if q < 0:
            count += 1
    return count


def tridiagonal_lowest(d, e, k, rtol=1e-13):
    """Lowest ``k`` eigenvalues of the symmetric tridiagonal matrix (d, e)."""
    d = np.asarray(d, dtype=float)
    e = np.asarray(e, dtype=float)
    n = len(d)
    if k > n:
        raise BoundStateIndexError(f"asked for {k} eigenvalues of a {n}x{n} matrix")
    r = np.zeros(n)
    r[:-1] += np.abs(e)
    r[1:] += np.abs(e)
    lo0, hi0 = float(np.min(d - r)), float(np.max(d + r))
    dl, e2 = d.tolist(), (e * e).tolist()
    out = []
    lo = lo0
    for j in range(k):
        a, b = lo, hi0
        while b - a > rtol * max(1.0, abs(a), abs(b)):
            mid = 0.5 * (a + b)
            if mid <= a or mid >= b:
                break
            if _sturm_count(dl, e2, mid) > j:
                b = mid
            else:
                a = mid
        val = 0.5 * (a + b)
        out.append(val)
        lo = a
    return np.array(out)


def _check_levels(k, grid, frac):
    if k < 0 or k > grid.N // frac:
        raise BoundStateIndexError(f"k={k} exceeds N/{frac} for N={grid.N}")


def _values(V, x):
    v = np.asarray(V(x))
    if v.shape != x.shape:
        v = np.broadcast_to(v, x.shape).copy()
    return v


def _as_real(v):
    v = np.asarray(v)
    if np.iscomplexobj(v):
        if np.any(np.abs(v.imag) > 0):
            raise DomainError("potential has a non-zero imaginary part; use solve_complex")
        v = v.real
    if not np.all(np.isfinite(v)):
        raise DomainError("potential is not finite on the grid")
    return v


def solve_pdm(dist, V, grid: Grid, k: int, kinetic=0.5) -> SpectrumReport:
    """Lowest ``k`` eigenvalues of the symmetric flux discretization."""
    _check_levels(k, grid, 4)
    v = _as_real(_values(V, grid.points()))
    d, e = flux_matrix(dist, v, grid, kinetic)
    vals = tridiagonal_lowest(d, e, k)
    return SpectrumReport(vals.astype(complex), Classification.ALL_REAL, 0.0, grid,
                          Scheme.FLUX_FD2)


def solve_constant_mass(V, grid: Grid, k: int, kinetic=0.5) -> SpectrumReport:
    """Lowest ``k`` Dirichlet eigenvalues of ``-kinetic Phi'' + V Phi``."""
    return solve_pdm(None, V, grid, k, kinetic)


MAX_DENSE = 2000


def solve_complex(dist, V, grid: Grid, k: int, kinetic=0.5, tol=1e-8) -> SpectrumReport:
    """``k`` eigenvalues of smallest real part of the complex discretization.

    ``dist`` may be ``None`` for unit mass. The matrix is complex symmetric,
    not Hermitian, so a dense Hessenberg-QR eigensolver is used.
    """
    if grid.N > MAX_DENSE:
        raise DomainError(f"dense complex solve limited to N <= {MAX_DENSE}")
    _check_levels(k, grid, 8)
    v = _values(V, grid.points()).astype(complex)
    if not np.all(np.isfinite(v)):
        raise DomainError("potential is not finite on the grid")
    d, e = flux_matrix(dist, v, grid, kinetic)
    H = np.diag(d) + np.diag(e.astype(complex), 1) + np.diag(e.astype(complex), -1)
    try:
        allvals = scipy.linalg.eigvals(H, overwrite_a=True, check_finite=False)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"QR iteration failed: {exc}") from exc
    allvals = allvals[np.lexsort((allvals.imag, allvals.real))]
    vals = allvals[:k]
    return SpectrumReport(vals, classify(vals, tol, allvals), tol, grid,
                          Scheme.NON_SELF_ADJOINT_FD2)
