import math
from fractions import Fraction
from math import comb, factorial

import numpy as np
import pytest

from landau_paraxial import DomainError, laguerre, mode_norm_constant


def laguerre_exact(n, alpha, x):
    """Oracle: explicit finite sum with exact rational arithmetic."""
    xq = Fraction(x)
    acc = Fraction(0)
    for k in range(n + 1):
        acc += Fraction((-1) ** k * comb(n + alpha, n - k), factorial(k)) * xq ** k
    return acc


def term_scale(n, alpha, x):
    """Absolute sum of the oracle terms: conditioning scale of the value."""
    xq = Fraction(x)
    return float(sum(abs(Fraction(comb(n + alpha, n - k), factorial(k)) * xq ** k)
                     for k in range(n + 1)))


def test_degree_zero_is_one():
    for alpha in range(4):
        assert laguerre(0, alpha, 3.7) == 1.0
    assert np.all(laguerre(0, 2, np.linspace(0, 9, 5)) == 1.0)


def test_degree_one_closed_form():
    # L_1^alpha(x) = 1 + alpha - x
    assert laguerre(1, 2, 1.0) == 2.0
    assert laguerre(1, 0, 0.5) == 0.5


def test_fixed_point_from_rational_oracle():
    assert laguerre(2, 0, 2.0) == pytest.approx(float(laguerre_exact(2, 0, 2)), abs=1e-15)
    assert float(laguerre_exact(2, 0, 2)) == -1.0


@pytest.mark.parametrize("n", range(11))
@pytest.mark.parametrize("alpha", range(6))
def test_recurrence_matches_explicit_sum(n, alpha):
    for x in np.linspace(0.0, 50.0, 41):
        exact = float(laguerre_exact(n, alpha, float(x)))
        got = laguerre(n, alpha, float(x))
        # 1e-12 relative away from cancellation points; near them the value is
        # conditioning-limited, bounded by eps times the absolute term sum.
        bound = max(1e-12 * abs(exact), 4e-16 * term_scale(n, alpha, float(x)))
        assert abs(got - exact) <= bound


def test_vectorized_matches_scalar():
    x = np.linspace(0.0, 30.0, 7)
    vec = laguerre(4, 2, x)
    assert vec.shape == x.shape
    for xi, vi in zip(x, vec):
        assert vi == laguerre(4, 2, float(xi))


@pytest.mark.parametrize("n, alpha", [(-1, 0), (2, -1)])
def test_invalid_orders_rejected(n, alpha):
    with pytest.raises(DomainError):
        laguerre(n, alpha, 1.0)


def test_non_finite_argument_rejected():
    with pytest.raises(DomainError):
        laguerre(2, 0, float("inf"))


def test_orthogonality_under_gauss_laguerre():
    # integral_0^inf x^a e^-x L_n^a L_m^a dx vanishes for n != m; the integrand
    # is a polynomial times the weight, so 64-node Gauss-Laguerre is exact.
    nodes, weights = np.polynomial.laguerre.laggauss(64)
    for alpha in range(5):
        for n in range(7):
            for m in range(n + 1, 7):
                val = np.sum(weights * nodes ** alpha
                             * laguerre(n, alpha, nodes) * laguerre(m, alpha, nodes))
                assert abs(val) < 1e-10


def test_norm_constant_reference_values():
    assert mode_norm_constant(0, 0) == pytest.approx(math.sqrt(2.0 / math.pi), rel=1e-15)
    assert mode_norm_constant(1, 2) == pytest.approx(math.sqrt(2.0 / (6.0 * math.pi)),
                                                     rel=1e-14)


def test_norm_constant_against_rational_oracle():
    mp = pytest.importorskip("mpmath")
    mp.mp.dps = 50
    for n in range(8):
        for ell in range(-8, 9):
            if n + abs(ell) > 20:
                continue
            ratio = Fraction(2 * factorial(n), factorial(n + abs(ell)))
            exact = mp.sqrt(mp.mpf(ratio.numerator) / ratio.denominator / mp.pi)
            assert mode_norm_constant(n, ell) == pytest.approx(float(exact), rel=1e-14)


def test_norm_constant_sign_independent_and_decreasing():
    for n in range(4):
        values = [mode_norm_constant(n, ell) for ell in range(9)]
        assert all(v > 0 for v in values)
        assert all(b < a for a, b in zip(values, values[1:]))
        for ell in range(9):
            assert mode_norm_constant(n, ell) == mode_norm_constant(n, -ell)


def test_norm_constant_large_orders_do_not_overflow():
    value = mode_norm_constant(150, 200)
    assert math.isfinite(value) and value > 0.0


def test_norm_constant_invalid_n():
    with pytest.raises(DomainError):
        mode_norm_constant(-1, 0)
