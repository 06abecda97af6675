import numpy as np
import pytest
from scipy.linalg import eigh_tridiagonal

from pctpdm.eigensolver import (Classification, Scheme, classify, flux_matrix,
                                solve_complex, solve_constant_mass, solve_pdm,
                                tridiagonal_lowest)
from pctpdm.errors import BoundStateIndexError, DomainError
from pctpdm.mass import MassDistribution
from pctpdm.numerics import Grid
from pctpdm.potentials import ReferenceProblem


def test_infinite_well():
    rep = solve_constant_mass(lambda y: 0.0 * y, Grid(0, np.pi, 2000), 2)
    assert rep.real == pytest.approx([0.5, 2.0], abs=1e-3)
    assert rep.classification is Classification.ALL_REAL
    assert rep.scheme is Scheme.FLUX_FD2


def test_harmonic_oscillator():
    rep = solve_constant_mass(lambda y: y * y / 2, Grid(-10, 10, 2000), 3)
    assert rep.real == pytest.approx([0.5, 1.5, 2.5], abs=1e-4)


def test_morse_levels_in_unit_kinetic_convention():
    ref = ReferenceProblem.morse(1, 1, 10)
    rep = solve_constant_mass(lambda y: ref.potential(y).real, Grid(-4, 12, 3000), 2, kinetic=1.0)
    assert rep.real == pytest.approx([-20.25, -12.25], rel=1e-3)


def test_morse_levels_half_kinetic_match_exact_formula():
    ref = ReferenceProblem.morse(1, 1, 10)
    rep = solve_constant_mass(lambda y: ref.potential(y).real, Grid(-4, 12, 3000), 2)
    assert rep.real == pytest.approx([ref.exact_energy(0), ref.exact_energy(1)], rel=1e-3)


def test_unit_mass_is_plain_laplacian():
    g = Grid(0, np.pi, 500)
    V = lambda y: np.cos(y)
    a = solve_pdm(MassDistribution.constant(), V, g, 3)
    b = solve_constant_mass(V, g, 3)
    assert np.array_equal(a.eigenvalues, b.eigenvalues)


def test_flux_matrix_symmetric_structure():
    g = Grid(-1, 1, 50)
    d, e = flux_matrix(MassDistribution.vanishing(1.3, 0.7), np.zeros(50), g)
    assert d.shape == (50,) and e.shape == (49,)
    assert np.all(e < 0) and np.all(d > 0)


@pytest.mark.parametrize("seed", range(5))
def test_bisection_against_lapack(seed):
    rng = np.random.default_rng(seed)
    d, e = rng.normal(size=200), rng.normal(size=199)
    ours = tridiagonal_lowest(d, e, 6)
    ref = eigh_tridiagonal(d, e, eigvals_only=True, select="i", select_range=(0, 5))
    assert ours == pytest.approx(ref, abs=1e-11)


def test_too_many_levels():
    with pytest.raises(BoundStateIndexError):
        solve_constant_mass(lambda y: y * 0, Grid(0, 1, 40), 11)
    with pytest.raises(BoundStateIndexError):
        tridiagonal_lowest(np.ones(3), np.ones(2), 4)


def test_complex_potential_rejected_by_real_solver():
    with pytest.raises(DomainError):
        solve_constant_mass(lambda y: 1j * y, Grid(-1, 1, 40), 2)


def test_non_finite_potential_rejected():
    with pytest.raises(DomainError):
        solve_constant_mass(lambda y: np.full_like(y, np.nan), Grid(-1, 1, 40), 2)


def test_dense_budget():
    with pytest.raises(DomainError):
        solve_complex(None, lambda y: 0j * y, Grid(0, 1, 2001), 2)


def test_complex_path_reproduces_real_solver():
    g = Grid(-6, 6, 400)
    dist = MassDistribution.vanishing(1, 1)
    V = lambda x: x * x / 2
    real = solve_pdm(dist, V, g, 3)
    cplx = solve_complex(dist, lambda x: (x * x / 2).astype(complex), g, 3)
    assert cplx.eigenvalues == pytest.approx(real.eigenvalues, abs=1e-8)
    assert cplx.classification is Classification.ALL_REAL
    assert cplx.scheme is Scheme.NON_SELF_ADJOINT_FD2


def test_linear_imaginary_potential_is_not_all_real():
    rep = solve_complex(None, lambda x: 1j * x * 10, Grid(-5, 5, 400), 6)
    assert rep.classification in (Classification.CONJUGATE_PAIRS, Classification.MIXED)


def test_pt_poschl_teller_q0_ground_level_real_and_stable():
    ref = ReferenceProblem.poschl_teller_pt(1, 1, 0.0)
    a = solve_complex(None, ref.potential, Grid(-8, 8, 400), 2, tol=1e-6)
    b = solve_complex(None, ref.potential, Grid(-8, 8, 800), 2, tol=1e-6)
    assert a.classification is Classification.ALL_REAL
    assert abs(a.real[0] - b.real[0]) < 1e-3 * max(1.0, abs(b.real[0]))


@pytest.mark.parametrize("values, expected", [
    ([1.0, 2.0 + 1e-12j], Classification.ALL_REAL),
    ([1 + 1j, 1 - 1j], Classification.CONJUGATE_PAIRS),
    ([1 + 1j, 1 - 1j, 3.0], Classification.MIXED),
    ([1 + 1j, 5.0], Classification.MIXED),
])
def test_classify(values, expected):
    assert classify(values) is expected
