import numpy as np
import pytest

from pctpdm.errors import DegenerateParameterError, DomainError
from pctpdm.specfun import MAX_DEGREE, jacobi, laguerre

from oracles import jacobi_sum, laguerre_sum


@pytest.mark.parametrize("n, a, x, expected", [
    (0, 3.3 + 1j, -7.0, 1.0),
    (1, 1, 2, 0.0),
    (2, 1, 2, -1.0),
])
def test_laguerre_examples(n, a, x, expected):
    assert laguerre(n, a, x) == pytest.approx(expected, abs=1e-14)


@pytest.mark.parametrize("n, a, b, x, expected", [
    (0, 2.0, -0.3, 9.0, 1.0),
    (1, 0, 0, 0.5, 0.5),
    (3, 0, 0, 1.0, 1.0),
])
def test_jacobi_examples(n, a, b, x, expected):
    assert jacobi(n, a, b, x) == pytest.approx(expected, abs=1e-14)


def test_jacobi_legendre_case():
    x = np.linspace(-1, 1, 11)
    assert np.allclose(jacobi(4, 0, 0, x), np.polynomial.legendre.legval(x, [0, 0, 0, 0, 1]))


def test_laguerre_matches_scipy_real():
    from scipy.special import eval_genlaguerre
    x = np.linspace(0, 10, 21)
    for n in range(7):
        assert np.allclose(laguerre(n, 1.5, x), eval_genlaguerre(n, 1.5, x), rtol=1e-12)


def test_at_one_is_binomial():
    from scipy.special import binom
    for n in range(6):
        assert jacobi(n, 2.5, -0.7, 1.0) == pytest.approx(binom(n + 2.5, n), rel=1e-13)


def test_degenerate_parameters():
    # k + a + b = 0 at k = 2
    with pytest.raises(DegenerateParameterError):
        jacobi(3, -1.0, -1.0, 0.3)


@pytest.mark.parametrize("n", [-1, 1.5, MAX_DEGREE + 1])
def test_bad_degree(n):
    with pytest.raises(DomainError):
        laguerre(n, 0, 0)


def test_random_complex_against_explicit_sums():
    rng = np.random.default_rng(7)
    for _ in range(20):
        a, b = rng.normal(size=2) + 1j * rng.normal(size=2)
        x = complex(*rng.uniform(-1.5, 1.5, 2))
        for n in range(9):
            assert laguerre(n, a, x) == pytest.approx(laguerre_sum(n, a, x), rel=1e-9, abs=1e-12)
            assert jacobi(n, a, b, x) == pytest.approx(jacobi_sum(n, a, b, x), rel=1e-9, abs=1e-12)
