from fractions import Fraction

import pytest
import sympy as sp

from selfconv.exact import binomial
from selfconv.poly import Polynomial, QuadraticSpec
from selfconv.series import (BivariateSeries, OrderMismatchError, PolarizationShift,
                             TruncatedSeries, binomial_series, build_A, coefficient_at,
                             geometric, inv_sqrt_one_minus_4y, rescale, series_add,
                             series_derivative, series_exp, series_integral, series_inverse,
                             series_log, series_mul, taylor_shift)

t = sp.Symbol("t")


def sympy_coeffs(expr, order):
    poly = sp.series(expr, t, 0, order + 1).removeO()
    return [Fraction(str(sp.Poly(poly, t).coeff_monomial(t ** k))) for k in range(order + 1)]


def test_inverse_of_one_minus_t():
    assert series_inverse(TruncatedSeries([1, -1], 6)) == TruncatedSeries([1] * 7, 6)


def test_inverse_matches_sympy():
    s = TruncatedSeries([2, -3, Fraction(1, 2), 5], 10)
    assert list(series_inverse(s).coeffs) == sympy_coeffs(
        1 / (2 - 3 * t + t ** 2 / 2 + 5 * t ** 3), 10)


def test_inverse_needs_unit():
    with pytest.raises(ZeroDivisionError):
        series_inverse(TruncatedSeries([0, 1], 4))


def test_exp_and_log():
    e = series_exp(TruncatedSeries([0, 1], 8))
    assert list(e.coeffs) == [Fraction(1, sp.factorial(k)) for k in range(9)]
    s = TruncatedSeries([0, 2, -1, Fraction(1, 3)], 9)
    assert series_log(series_exp(s)) == s
    with pytest.raises(ValueError):
        series_exp(TruncatedSeries([1, 1], 3))


def test_inverse_sqrt_series():
    s = inv_sqrt_one_minus_4y(10)
    assert list(s.coeffs) == [binomial(2 * n, n) for n in range(11)]
    assert list(s.coeffs) == sympy_coeffs((1 - 4 * t) ** sp.Rational(-1, 2), 10)
    assert (s * s) == geometric(4, 10)


def test_binomial_series_rational_exponent():
    s = binomial_series(Fraction(1, 3), 8)
    assert (s * s * s).coeffs[:2] == (1, 1)
    assert all(c == 0 for c in (s * s * s).coeffs[2:])


def test_mul_keeps_smaller_order_unless_strict():
    a, b = TruncatedSeries([1, 1], 3), TruncatedSeries([1, 2], 5)
    assert series_mul(a, b).order == 3
    assert series_add(a, b).order == 3
    with pytest.raises(OrderMismatchError):
        series_mul(a, b, strict=True)
    with pytest.raises(OrderMismatchError):
        series_add(a, b, strict=True)


def test_coefficient_access():
    s = TruncatedSeries([1, 2, 3], 2)
    assert coefficient_at(s, -1) == 0
    assert s[2] == 3
    with pytest.raises(OrderMismatchError):
        s[3]
    with pytest.raises(OrderMismatchError):
        s.truncate(4)


def test_derivative_and_integral():
    s = TruncatedSeries([5, 1, 3, 4], 3)
    assert series_derivative(s) == TruncatedSeries([1, 6, 12], 2)
    assert series_integral(series_derivative(s), 5) == s
    with pytest.raises(OrderMismatchError):
        series_derivative(TruncatedSeries([1], 0))


def test_power_and_rescale():
    s = TruncatedSeries([1, 1], 6)
    assert list((s ** 3).coeffs[:4]) == [1, 3, 3, 1]
    assert (s ** -1) == series_inverse(s)
    assert rescale(geometric(1, 5), 3) == geometric(3, 5)


def test_polynomial_times_series():
    s = geometric(1, 5)
    assert s * Polynomial([1, -1]) == TruncatedSeries([1], 5)


def test_build_A_small_coefficients():
    A = build_A(3)
    assert A.coefficient(0).is_zero()
    assert A.coefficient(1) == Polynomial([1])
    assert A.coefficient(2) == Polynomial([4, 1])
    assert A.coefficient(3) == Polynomial([16, 7, Fraction(1, 2)])


def test_build_A_matches_sympy_expansion():
    y, z = sp.symbols("y z")
    closed = y / (1 - 4 * y) * sp.exp(z / 2 * ((1 - 4 * y) ** sp.Rational(-1, 2) - 1))
    expanded = sp.expand(sp.series(closed, y, 0, 7).removeO())
    A = build_A(6)
    for n in range(7):
        coeff_n = sp.expand(expanded.coeff(y, n))
        ours = sum(sp.Rational(c.numerator, c.denominator) * z ** i
                   for i, c in enumerate(A.coefficient(n).coeffs))
        assert sp.expand(coeff_n - ours) == 0


def test_bivariate_x_truncation():
    a = BivariateSeries([Polynomial([1, 1])], 2, x_order=1)
    sq = a * a
    assert sq.coefficient(0) == Polynomial([1, 2])
    assert sq.x_order == 1


def test_taylor_shift_of_polynomial():
    # F(x) = x^2 shifted by X = y gives x^2 + 2xy + y^2
    F = TruncatedSeries([0, 0, 1], 6)
    shift = BivariateSeries([Polynomial(), Polynomial([1])], 3)
    out = taylor_shift(F, shift, 3)
    assert out.coefficient(0) == Polynomial([0, 0, 1])
    assert out.coefficient(1) == Polynomial([0, 2])
    assert out.coefficient(2) == Polynomial([1])
    assert out.coefficient(3).is_zero()


def test_taylor_shift_rejects_nonzero_constant_shift():
    with pytest.raises(ValueError):
        taylor_shift(TruncatedSeries([1], 4), BivariateSeries([Polynomial([1])], 2), 2)


def test_polarization_shift_first_term():
    spec = QuadraticSpec(3, 2)
    shift = PolarizationShift.for_spec(spec, 3).shift
    # first-order term is Q'(x) / Δ
    assert shift.coefficient(1) == spec.Q.derivative() * (1 / spec.delta)
