from fractions import Fraction
import random

import pytest
import sympy as sp

from published import BETA_FACTORED, TABLE1
from selfconv.exact import binomial, factorial
from selfconv.linearize import (ALGORITHMS, alpha_by_convolution, alpha_by_recurrence,
                                alpha_by_series, alpha_poly, alpha_polys_by_recurrence,
                                alpha_table, beta_factor_check, beta_poly, beta_value,
                                central_binomial_column, check_pde, check_polarization,
                                oeis_fixture_check, convolution_terms)
from selfconv.poly import Polynomial, QuadraticSpec
from selfconv.series import series_inverse, TruncatedSeries

x = sp.Symbol("x")


def to_sympy(p: Polynomial):
    return sum(sp.Rational(c.numerator, c.denominator) * x ** i for i, c in enumerate(p.coeffs))


@pytest.mark.parametrize("algo", sorted(ALGORITHMS))
def test_published_table(algo):
    table = ALGORITHMS[algo](10)
    grid = [[table.scaled(k, n) for n in range(1, 11)] for k in range(10)]
    assert grid == TABLE1


def test_algorithms_agree_to_15():
    rec, conv, ser = (f(15) for f in (alpha_by_recurrence, alpha_by_convolution, alpha_by_series))
    assert rec.same_values(conv) and rec.same_values(ser)


def test_edge_values():
    table = alpha_table(12)
    for n in range(1, 13):
        assert table.get(0, n) == 4 ** (n - 1)
        assert table.get(n - 1, n) == Fraction(1, factorial(n - 1))
    assert table.get(5, 3) == 0 and table.get(-1, 3) == 0
    with pytest.raises(KeyError):
        table.get(1, 13)


def test_single_cell_table():
    assert alpha_by_recurrence(1).values == {(0, 1): 1}
    with pytest.raises(ValueError):
        alpha_by_recurrence(0)


def test_convolution_route_example():
    assert convolution_terms(3, 6) == [(1, 57), (4, 9), (16, 1)]
    total = sum(a * b for a, b in convolution_terms(3, 6))
    assert Fraction(total, factorial(3)) == Fraction(109, 6) == alpha_table(6).get(3, 6)


def test_convolution_order_zero_column_is_delta():
    assert convolution_terms(0, 4) == [(1, 0), (4, 0), (16, 0), (64, 1)]


def test_central_binomial_column():
    assert central_binomial_column(4) == [1, 3, 10, 35, 126]


@pytest.mark.parametrize("p,q", [(1, -1), (3, 2), (Fraction(1, 2), Fraction(5, 3))])
def test_alpha_polynomials_two_routes(p, q):
    spec = QuadraticSpec(p, q)
    polys = alpha_polys_by_recurrence(spec, 8)
    for n in range(1, 9):
        for i in range(n):
            assert alpha_poly(i, n, spec) == polys[(i, n)]


def test_alpha_polynomials_linearize_powers():
    # F^n = sum_i alpha_{i,n}(x) F^(i) for F = -1/Q, checked on a series
    spec = QuadraticSpec(3, 2)
    F = -series_inverse(TruncatedSeries.from_poly(spec.Q, 20))
    for n in range(1, 6):
        rhs = TruncatedSeries([0], 20 - n + 1)
        d = F
        for i in range(n):
            if i:
                d = d.derivative()
            rhs = rhs + d.truncate(rhs.order) * alpha_poly(i, n, spec)
        assert (F ** n).truncate(rhs.order) == rhs


def test_alpha_poly_range():
    with pytest.raises(ValueError):
        alpha_poly(3, 3, QuadraticSpec(1, -1))


@pytest.mark.parametrize("key", sorted(BETA_FACTORED))
def test_beta_matches_published_factorization(key):
    n, s = key
    assert sp.expand(to_sympy(beta_poly(n, s).poly) - sp.sympify(BETA_FACTORED[key])) == 0


def test_beta_two_evaluation_routes():
    table = alpha_table(9)
    rng = random.Random(5)
    for _ in range(60):
        n = rng.randint(1, 9)
        s = rng.randint(0, n - 1)
        xv = rng.randint(-20, 40)
        assert beta_poly(n, s, table)(xv) == beta_value(n, s, xv, table)


def test_beta_range():
    with pytest.raises(ValueError):
        beta_poly(3, 3)


def test_beta_degree_and_factor_to_12():
    rep = beta_factor_check(12)
    assert rep.passed, rep.render()


def test_pde_closed_form():
    rep = check_pde(20)
    assert rep.passed, rep.render()


def test_pde_from_table():
    assert check_pde(12, alpha_table(12).to_bivariate()).passed


def test_pde_detects_perturbation():
    rep = check_pde(8, alpha_table(8).perturbed(2, 5, 1).to_bivariate())
    assert not rep.passed
    assert {loc for loc, _, _ in rep.discrepancies} >= {"z^2 y^3", "z^2 y^4"}


def test_pde_rejects_short_input():
    with pytest.raises(ValueError):
        check_pde(10, alpha_table(6).to_bivariate())


@pytest.mark.parametrize("p,q", [(3, 2), (1, -1), (Fraction(1, 2), Fraction(-3, 4))])
def test_polarization(p, q):
    rep = check_polarization(QuadraticSpec(p, q), 8, 8)
    assert rep.passed, rep.render()
    assert rep.checked == 81


@pytest.mark.parametrize("algo", sorted(ALGORITHMS))
def test_oeis_fixtures(algo):
    assert oeis_fixture_check(ALGORITHMS[algo](10)).passed


def test_oeis_fixtures_catch_perturbation():
    rep = oeis_fixture_check(alpha_table(10).perturbed(1, 4, 1))
    assert not rep.passed
    with pytest.raises(ValueError):
        oeis_fixture_check(alpha_table(9))


def test_alpha_diagonal_sequences():
    table = alpha_table(12)
    # i! alpha~_{i,i+2} = 3i + 4
    assert [table.scaled(i, i + 2) for i in range(10)] == [3 * i + 4 for i in range(10)]
    # alpha~_{1,n} = sum_j 4^(n-2-j) C(2j+1, j+1)
    for n in range(2, 12):
        assert table.get(1, n) == sum(4 ** (n - 2 - j) * binomial(2 * j + 1, j + 1) for j in range(n - 1))
