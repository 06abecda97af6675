import math

import numpy as np
import pytest

from pctpdm.engine import (NumericMass, SignConvention, build_target, correction_term,
                           grid_from_reference, paper_mode)
from pctpdm.errors import DomainError, RangeError
from pctpdm.mass import MassDistribution
from pctpdm.numerics import Grid
from pctpdm.potentials import Family, ReferenceProblem

AS_PRINTED, CORRECTED = SignConvention.AS_PRINTED, SignConvention.CORRECTED
AV = MassDistribution.vanishing
SL = MassDistribution.squared_lorentzian
EX = MassDistribution.exponential


def test_identity_transform():
    ref = ReferenceProblem.morse(1, 1, 10)
    ts = build_target(MassDistribution.constant(), ref, AS_PRINTED, Grid(-5, 5, 100))
    x = np.linspace(-4, 4, 17)
    assert np.array_equal(ts.potential(x), ref.potential(x))
    assert np.array_equal(ts.wavefunction(0, x), ref.eigenfunction(0, x))


@pytest.mark.parametrize("dist, x, sign, expected", [
    (AV(1, 1), 0.0, CORRECTED, -0.25),
    (AV(1, 1), 0.0, AS_PRINTED, 0.25),
    (SL(1, 1), 0.0, AS_PRINTED, 0.5),
    (SL(1, 1), 0.0, CORRECTED, -0.5),
    (MassDistribution.constant(), 2.3, AS_PRINTED, 0.0),
])
def test_correction_values(dist, x, sign, expected):
    assert correction_term(dist, x, sign) == pytest.approx(expected, abs=1e-15)


def test_exponential_correction_magnitude():
    assert abs(correction_term(EX(1), 0.0, AS_PRINTED)) == pytest.approx(3 / 32)
    # bracket is constant, the 1/m prefactor grows like e^{alpha x}
    x = np.array([-1.0, 0.0, 2.0])
    assert np.allclose(correction_term(EX(1.5), x), -3 * 1.5 ** 2 * np.exp(1.5 * x) / 32)


def test_correction_scales_with_kinetic():
    a = correction_term(AV(1.3, 0.7), 0.4, CORRECTED, kinetic=1.0)
    b = correction_term(AV(1.3, 0.7), 0.4, CORRECTED, kinetic=0.5)
    assert a == pytest.approx(2 * b)


def test_vanishing_target_at_origin():
    ref = paper_mode(AV(1, 1), ReferenceProblem.morse(1, 1, 1))
    ts = build_target(AV(1, 1), ref, CORRECTED)
    assert ts.potential(0.0) == pytest.approx(-0.25)


def test_wavefunction_prefactor():
    ref = ReferenceProblem.morse(1, 1, 10)
    ts = build_target(AV(1, 1), ref)
    assert ts.wavefunction(0, 0.0) == pytest.approx(ref.eigenfunction(0, 0.0))
    ts = build_target(EX(2), ref)
    assert ts.wavefunction(0, 0.0) == pytest.approx(ref.eigenfunction(0, -1.0))


def test_domain_checks():
    ref = ReferenceProblem.morse(1, 1, 10)
    build_target(EX(1), ref, CORRECTED, Grid(-3, 6, 100))
    with pytest.raises(RangeError):
        grid_from_reference(SL(1, 1), -1.0, 2.0, 100)
    with pytest.raises(RangeError):
        grid_from_reference(EX(1), -3.0, 0.5, 100)
    with pytest.raises(DomainError):
        build_target(AV(), ref, kinetic=0.0)


def test_grid_from_reference_ends():
    g = grid_from_reference(AV(1.2, 0.5), -2.0, 3.0, 100)
    assert AV(1.2, 0.5).mapping(g.x_min) == pytest.approx(-2.0)
    assert AV(1.2, 0.5).mapping(g.x_max) == pytest.approx(3.0)


def test_paper_mode_ties_alpha():
    ref = ReferenceProblem.morse(1, 1, 10)
    assert paper_mode(AV(1.7, 1), ref).alpha == 1.7
    assert paper_mode(MassDistribution.constant(), ref).alpha == 1.0
    assert paper_mode(AV(1.7, 1), ReferenceProblem.morse_non_pt(1, 1, 2)).alpha == 1.0
    assert paper_mode(AV(1.7, 1), ReferenceProblem.morse_pt_oscillator(1, 2)).alpha == 2.0


@pytest.fixture(scope="module")
def numeric_av():
    dist = AV(1.3, 0.7)
    # anchor the quadrature where the closed-form map vanishes
    return dist, NumericMass(dist.mass, anchor=float(dist.inverse(0.0)))


def test_numeric_mass_derivatives(numeric_av):
    dist, num = numeric_av
    x = np.array([-1.0, 0.2, 1.5])
    for a, b in zip(dist.derivs(x), num.derivs(x)):
        assert np.allclose(a, b, rtol=1e-6, atol=1e-7)


def test_numeric_mass_map_and_inverse(numeric_av):
    dist, num = numeric_av
    x = np.array([-2.0, -0.3, 0.9])
    assert np.allclose(num.mapping(x), dist.mapping(x), atol=1e-9)
    assert np.allclose(num.inverse(dist.mapping(x)), x, atol=1e-9)


def test_numeric_mass_correction(numeric_av):
    dist, num = numeric_av
    x = np.linspace(-1, 1, 5)
    assert np.allclose(correction_term(num, x), correction_term(dist, x), rtol=1e-5)
