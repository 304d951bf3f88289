"""Linearization coefficients for powers of F = -1/Q.

For a monic quadratic Q with discriminant Δ,

    F^n = sum_{i<n} alpha~_{i,n} (Q')^i / Δ^(n-1) * d^i F / dx^i,

and the rational numbers alpha~_{i,n} do not depend on Q.  Three independent
routes compute them: a two-term recurrence, a convolution of the central
binomial column C(2m+1, m+1), and coefficient extraction from the closed-form
generating function A(y, z).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Optional, Tuple

from .exact import binomial, factorial, falling_factorial
from .poly import Polynomial, QuadraticSpec, X, falling_factorial_poly
from .report import VerificationReport
from .sequences import conv_power
from .series import (BivariateSeries, PolarizationShift, TruncatedSeries, build_A,
                     geometric, series_inverse, taylor_shift)

# Prefixes read off the k! alpha~ table (n <= 10); keyed by OEIS id.
OEIS_A000531 = (1, 7, 38, 187, 874, 3958, 17548, 76627, 330818)   # alpha~_{1,n}, n >= 2
OEIS_A038806 = (1, 10, 69, 406, 2186, 11124, 54445, 259006)       # 2! alpha~_{2,n}, n >= 3
OEIS_A081270 = (16, 38, 69, 109, 158, 216, 283, 359)              # i! alpha~_{i,i+3}, i >= 0
OEIS_A016777 = (4, 7, 10, 13, 16, 19, 22, 25, 28)                 # i! alpha~_{i,i+2}, i >= 0


@dataclass(frozen=True)
class AlphaTable:
    """alpha~_{i,n} for 0 <= i < n <= max_n; zero outside that triangle."""

    max_n: int
    values: Dict[Tuple[int, int], Fraction]
    provenance: str

    def get(self, i: int, n: int) -> Fraction:
        if n < 1 or i < 0 or i >= n:
            return Fraction(0)
        if n > self.max_n:
            raise KeyError(f"alpha~_{{{i},{n}}} beyond table size {self.max_n}")
        return self.values[(i, n)]

    def __getitem__(self, key: Tuple[int, int]) -> Fraction:
        return self.get(*key)

    def scaled(self, k: int, n: int) -> Fraction:
        """k! alpha~_{k,n}, the layout of the published integer table."""
        return factorial(k) * self.get(k, n) if k >= 0 else Fraction(0)

    def same_values(self, other: "AlphaTable") -> bool:
        return self.max_n == other.max_n and self.values == other.values

    def cells(self):
        for n in range(1, self.max_n + 1):
            for i in range(n):
                yield i, n, self.values[(i, n)]

    def perturbed(self, i: int, n: int, delta) -> "AlphaTable":
        vals = dict(self.values)
        vals[(i, n)] += delta
        return AlphaTable(self.max_n, vals, self.provenance + "+perturbed")

    def to_bivariate(self) -> BivariateSeries:
        """A(y, z) truncated at y^max_n."""
        cs = [Polynomial()] + [Polynomial(self.values[(i, n)] for i in range(n))
                               for n in range(1, self.max_n + 1)]
        return BivariateSeries(cs, self.max_n)


def alpha_by_recurrence(max_n: int) -> AlphaTable:
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    vals = {(0, 1): Fraction(1)}

    def at(i, n):
        return vals.get((i, n), Fraction(0))

    for n in range(1, max_n):
        for i in range(n + 1):
            vals[(i, n + 1)] = Fraction(2 * i, n) * at(i, n) + at(i - 1, n) / n + 4 * at(i, n)
    return AlphaTable(max_n, vals, "recurrence")


def central_binomial_column(length: int) -> list:
    """C(2m+1, m+1) for m = 0..length."""
    return [Fraction(binomial(2 * m + 1, m + 1)) for m in range(length + 1)]


def _column_power(k: int, length: int) -> list:
    # k = 0 is the Kronecker delta at index 0
    if k == 0:
        return [Fraction(1)] + [Fraction(0)] * length
    return conv_power(central_binomial_column(length), k, length)


def convolution_terms(k: int, n: int) -> list:
    """The pairs (4^i, c^{*k}_j) with i + j = n - k - 1, j descending."""
    m = n - k - 1
    if m < 0:
        return []
    col = _column_power(k, m)
    return [(4 ** (m - j), col[j]) for j in range(m, -1, -1)]


def alpha_by_convolution(max_n: int) -> AlphaTable:
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    vals = {}
    for k in range(max_n):
        col = _column_power(k, max_n - k - 1)
        for n in range(k + 1, max_n + 1):
            m = n - k - 1
            total = sum((4 ** (m - j) * col[j] for j in range(m + 1)), Fraction(0))
            vals[(k, n)] = total / factorial(k)
    return AlphaTable(max_n, vals, "convolution")


def alpha_by_series(max_n: int) -> AlphaTable:
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    A = build_A(max_n)
    vals = {(i, n): A.cell(i, n) for n in range(1, max_n + 1) for i in range(n)}
    return AlphaTable(max_n, vals, "series")


ALGORITHMS = {
    "rec": alpha_by_recurrence,
    "conv": alpha_by_convolution,
    "series": alpha_by_series,
}


@lru_cache(maxsize=None)
def alpha_table(max_n: int) -> AlphaTable:
    return alpha_by_recurrence(max_n)


def alpha_poly(i: int, n: int, spec: QuadraticSpec, table: Optional[AlphaTable] = None) -> Polynomial:
    """alpha_{i,n}(x) = (2x - p)^i alpha~_{i,n} / Δ^(n-1)."""
    if not 0 <= i < n:
        raise ValueError(f"need 0 <= i < n, got i={i}, n={n}")
    table = table or alpha_table(max(n, 1))
    return spec.Q.derivative() ** i * (table.get(i, n) / spec.delta ** (n - 1))


def alpha_polys_by_recurrence(spec: QuadraticSpec, max_n: int) -> Dict[Tuple[int, int], Polynomial]:
    """alpha_{i,n}(x) from the polynomial recurrence, without the Q'-factorization."""
    dQ = spec.Q.derivative()
    delta = spec.delta
    polys = {(0, 1): Polynomial([1])}

    def at(i, n):
        return polys.get((i, n), Polynomial())

    for n in range(1, max_n):
        for i in range(n + 1):
            polys[(i, n + 1)] = (dQ * at(i, n).derivative() + dQ * at(i - 1, n)
                                 + at(i, n) * (4 * n)) / (n * delta)
    return polys


@dataclass(frozen=True)
class BetaPolynomial:
    n: int
    s: int
    poly: Polynomial

    def __call__(self, x) -> Fraction:
        return self.poly(x)


def beta_poly(n: int, s: int, table: Optional[AlphaTable] = None) -> BetaPolynomial:
    """beta_{n,s}(x) = sum_{i=s}^{n-1} 2^(i-s) C(i, i-s) alpha~_{i,n} (x + s - n)_i."""
    if not 0 <= s < n:
        raise ValueError(f"need 0 <= s < n, got n={n}, s={s}")
    table = table or alpha_table(n)
    out = Polynomial()
    for i in range(s, n):
        c = 2 ** (i - s) * binomial(i, i - s) * table.get(i, n)
        out = out + falling_factorial_poly(X + (s - n), i) * c
    return BetaPolynomial(n, s, out)


def beta_value(n: int, s: int, x: int, table: Optional[AlphaTable] = None) -> Fraction:
    """beta_{n,s} at an integer point, summed with scalar falling factorials."""
    table = table or alpha_table(n)
    return sum((2 ** (i - s) * binomial(i, i - s) * table.get(i, n) * falling_factorial(x + s - n, i)
                for i in range(s, n)), Fraction(0))


def check_pde(y_order: int, A: Optional[BivariateSeries] = None) -> VerificationReport:
    """(1-4y) A_yy = z (1 + 2 d/dz)(A/y) + (z+8) A_y + 2z A_yz, plus initial conditions.

    Compares coefficients of z^i y^m for m <= y_order - 2.  ``A`` defaults to
    the closed form; pass ``table.to_bivariate()`` to check a table instead.
    """
    if y_order < 3:
        raise ValueError("check_pde needs y_order >= 3")
    if A is None:
        A = build_A(y_order)
    elif A.y_order < y_order:
        raise ValueError(f"series known to y^{A.y_order}, need y^{y_order}")
    else:
        A = BivariateSeries(A.coeffs, y_order)
    rep = VerificationReport(f"pde residual to y^{y_order - 2}")

    Ay = A.dy()
    Ayy = Ay.dy()
    one_minus_4y = TruncatedSeries([1, -4], y_order)
    lhs = Ayy * one_minus_4y
    A_over_y = A.div_y()
    term1 = (A_over_y + A_over_y.dz() * 2).times_z()
    term2 = Ay.times_z() + Ay * 8
    term3 = Ay.dz().times_z() * 2
    rhs = term1 + term2 + term3
    for m in range(y_order - 1):
        L, R = lhs.coefficient(m), rhs.coefficient(m)
        for i in range(max(L.degree, R.degree) + 1):
            rep.compare(f"z^{i} y^{m}", L.coeff(i), R.coeff(i))

    A0 = A.coefficient(0)
    for i in range(max(A0.degree, 0) + 1):
        rep.compare(f"A(0,z) z^{i}", 0, A0.coeff(i))
    dA1 = A.coefficient(1)
    rep.compare("dA/dy(0,z) constant", 1, dA1.coeff(0))
    for i in range(1, dA1.degree + 1):
        rep.compare(f"dA/dy(0,z) z^{i}", 0, dA1.coeff(i))
    geo = geometric(4, y_order - 1).coeffs
    for n in range(1, y_order + 1):
        rep.compare(f"A(y,0) y^{n}", geo[n - 1], A.cell(0, n))
    return rep


def check_polarization(spec: QuadraticSpec, x_order: int, y_order: int) -> VerificationReport:
    """sum_{n<=N} F^n y^n  ==  y/(1-4y/Δ) F(x + x') in the truncated (x, y) ring."""
    rep = VerificationReport(
        f"polarization for Q = {spec.Q.render()} to (x^{x_order}, y^{y_order})")
    Q_series = TruncatedSeries.from_poly(spec.Q, x_order)
    F = -series_inverse(Q_series)
    geometric_side = [Polynomial()]
    power = TruncatedSeries.one(x_order)
    for _ in range(y_order):
        power = power * F
        geometric_side.append(power.to_poly())
    lhs = BivariateSeries(geometric_side, y_order, x_order)

    F_long = -series_inverse(TruncatedSeries.from_poly(spec.Q, x_order + y_order))
    shifted = taylor_shift(F_long, PolarizationShift.for_spec(spec, y_order), y_order)
    prefactor = TruncatedSeries([0] + list(geometric(4 / spec.delta, y_order - 1).coeffs), y_order)
    rhs = shifted * prefactor

    for n in range(y_order + 1):
        L, R = lhs.coefficient(n), rhs.coefficient(n)
        for k in range(x_order + 1):
            if not rep.compare(f"x^{k} y^{n}", L.coeff(k), R.coeff(k)):
                return rep
    return rep


def oeis_fixture_check(table: AlphaTable) -> VerificationReport:
    if table.max_n < 10:
        raise ValueError("fixture check needs a table covering n <= 10")
    rep = VerificationReport(f"OEIS fixtures against {table.provenance} table")
    for t, want in enumerate(OEIS_A000531):
        rep.compare(f"A000531[{t}] = alpha~_(1,{t + 2})", want, table.get(1, t + 2))
    for t, want in enumerate(OEIS_A038806):
        rep.compare(f"A038806[{t}] = 2! alpha~_(2,{t + 3})", want, table.scaled(2, t + 3))
    for i, want in enumerate(OEIS_A081270):
        rep.compare(f"A081270[{i}] = {i}! alpha~_({i},{i + 3})", want, table.scaled(i, i + 3))
    for i, want in enumerate(OEIS_A016777):
        rep.compare(f"A016777[{i}] = {i}! alpha~_({i},{i + 2})", want, table.scaled(i, i + 2))
    return rep


def beta_factor_check(max_n: int) -> VerificationReport:
    """deg beta_{n,s} = n - 1 and (x - n + s)_s divides beta_{n,s}."""
    if max_n < 2:
        raise ValueError("beta_factor_check needs max_n >= 2")
    table = alpha_table(max_n)
    rep = VerificationReport(f"beta degree and factor to n = {max_n}")
    for n in range(1, max_n + 1):
        for s in range(n):
            b = beta_poly(n, s, table).poly
            rep.compare(f"deg beta_({n},{s})", n - 1, b.degree)
            rem = b % falling_factorial_poly(X - (n - s), s)
            for k, c in enumerate(rem.coeffs):
                rep.compare(f"beta_({n},{s}) mod (x-{n - s})_{s} at x^{k}", 0, c)
            if rem.is_zero():
                rep.checked += 1
    return rep
