"""Exact verification of the self-convolution identities.

Each verifier computes the left side by brute force (repeated series or
Cauchy products) and the right side through the alpha~/beta closed forms,
then reports every coefficient that differs.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from .exact import binomial, falling_factorial
from .linearize import AlphaTable, alpha_table, beta_poly
from .poly import (CubicSpec, DegenerateSpecError, Polynomial, QuadraticSpec,
                   cubic_has_distinct_roots, invariant_j)
from .report import VerificationReport
from .sequences import (F_k_series, ScaledQuadraticSeries, conv_power, gen_fib,
                        tribonacci)
from .series import TruncatedSeries, series_derivative, series_inverse


class IdentityFailure(ArithmeticError):
    """An identity that must hold symbolically did not."""


def _compare_series(rep: VerificationReport, lhs: TruncatedSeries, rhs: TruncatedSeries,
                    upto: int) -> VerificationReport:
    for k in range(upto + 1):
        rep.compare(f"x^{k}", lhs.coeffs[k], rhs.coeffs[k])
    return rep


def _derivative_expansion(S: TruncatedSeries, weights: List[Polynomial]) -> TruncatedSeries:
    """sum_i weights[i] * d^i S / dx^i, exact through x^(S.order - len(weights) + 1)."""
    order = S.order - len(weights) + 1
    total = TruncatedSeries([0], order)
    d = S
    for i, w in enumerate(weights):
        if i:
            d = series_derivative(d)
        total = total + d.truncate(order) * w
    return total


def verify_devS(gamma, spec: QuadraticSpec, n: int, x_order: int,
                table: Optional[AlphaTable] = None) -> VerificationReport:
    """(S_A)^n against (γ/Δ)^(n-1) sum_i alpha~_{i,n} (Q')^i d^i S_A, with S_A = -γ/Q."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if x_order < n:
        raise ValueError("x_order must be >= n")
    gamma = Fraction(gamma)
    table = table or alpha_table(n)
    S = ScaledQuadraticSeries(gamma, spec).series(x_order)
    lhs = S ** n
    dQ = spec.Q.derivative()
    scale = (gamma / spec.delta) ** (n - 1)
    weights = [dQ ** i * (table.get(i, n) * scale) for i in range(n)]
    rhs = _derivative_expansion(S, weights)
    rep = VerificationReport(f"devS n={n} gamma={gamma} Q={spec.Q.render()}")
    return _compare_series(rep, lhs, rhs, rhs.order)


def coefxS_weight(spec: QuadraticSpec, n: int, k: int, s: int, table: AlphaTable) -> Fraction:
    """Inner sum over i multiplying a_s in the coefficient-level identity."""
    p = spec.p
    return sum((table.get(i, n) * binomial(i, k - s + i) * Fraction(2) ** (k - s + i)
                * (-p) ** (s - k) * falling_factorial(s, i)
                for i in range(max(s - k, 0), n)), Fraction(0))


def verify_coefxS(gamma, spec: QuadraticSpec, n: int, k_max: int,
                  table: Optional[AlphaTable] = None) -> VerificationReport:
    """a^{*n}_k = (γ/Δ)^(n-1) sum_{s=k}^{k+n-1} w_{k,s} a_s for k <= k_max."""
    gamma = Fraction(gamma)
    table = table or alpha_table(n)
    a = ScaledQuadraticSeries(gamma, spec).series(k_max + n).coeffs
    lhs = conv_power(a, n, k_max)
    scale = (gamma / spec.delta) ** (n - 1)
    rep = VerificationReport(f"coefxS n={n} gamma={gamma} Q={spec.Q.render()}")
    for k in range(k_max + 1):
        rhs = scale * sum((coefxS_weight(spec, n, k, s, table) * a[s] for s in range(k, k + n)),
                          Fraction(0))
        rep.compare(f"k={k}", lhs[k], rhs)
    return rep


def devF_coefficients(n: int, table: Optional[AlphaTable] = None) -> List[Fraction]:
    """(-1)^(n-i-1) alpha~_{i,n} for i = n-1 down to 0.

    These multiply q^((n-i-1)k) (V_k - 2x q^k)^i d^i F_k in the expansion of
    (F_k)^n, after the common factor (U_k / (V_k^2 - 4q^k))^(n-1).
    """
    table = table or alpha_table(n)
    return [(-1) ** (n - i - 1) * table.get(i, n) for i in range(n - 1, -1, -1)]


def verify_devF(spec: QuadraticSpec, k: int, n: int, x_order: int,
                table: Optional[AlphaTable] = None) -> VerificationReport:
    table = table or alpha_table(n)
    Fk = F_k_series(spec, k, x_order)
    stream = gen_fib(spec, max(k, 2))
    Uk, Vk, qk = stream.U[k], stream.V[k], spec.q ** k
    scale = (Uk / (Vk * Vk - 4 * qk)) ** (n - 1)
    lin = Polynomial([Vk, -2 * qk])
    weights = [lin ** i * ((-1) ** (n - i - 1) * qk ** (n - i - 1) * table.get(i, n) * scale)
               for i in range(n)]
    rhs = _derivative_expansion(Fk, weights)
    lhs = Fk ** n
    rep = VerificationReport(f"devF n={n} k={k} p={spec.p} q={spec.q}")
    return _compare_series(rep, lhs, rhs, rhs.order)


def corollary_rhs(spec: QuadraticSpec, k: int, n: int, j: int, stream=None,
                  table: Optional[AlphaTable] = None) -> Fraction:
    table = table or alpha_table(n)
    if stream is None:
        stream = gen_fib(spec, max(k * (j + 1), k, 2))
    Uk, Vk, qk = stream.U[k], stream.V[k], spec.q ** k
    total = Fraction(0)
    for s in range(n):
        b = beta_poly(n, s, table).poly(j)
        if b:
            total += (-qk) ** (n - s - 1) * b * Vk ** s * stream.u(k * (s + j - n + 1))
    return (Uk / (Vk * Vk - 4 * qk)) ** (n - 1) * total


def verify_corollary(spec: QuadraticSpec, k: int, n: int, j_max: int,
                     table: Optional[AlphaTable] = None) -> VerificationReport:
    """sum over j_1+..+j_n = j of U_{k j_1}..U_{k j_n}, against the beta closed form."""
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    if spec.q == 0:
        raise DegenerateSpecError("negative U indices need q != 0")
    table = table or alpha_table(n)
    stream = gen_fib(spec, max(k * (j_max + 1), k, 2))
    if stream.U[k] == 0:
        raise DegenerateSpecError(f"U_{k} = 0")
    if stream.V[k] ** 2 - 4 * spec.q ** k == 0:
        raise DegenerateSpecError(f"Δ_{k} = 0")
    seq = [stream.U[k * m] for m in range(j_max + 1)]
    lhs = conv_power(seq, n, j_max)
    rep = VerificationReport(f"corollary n={n} k={k} p={spec.p} q={spec.q}")
    for j in range(j_max + 1):
        rep.compare(f"j={j}", lhs[j], corollary_rhs(spec, k, n, j, stream, table))
    return rep


@dataclass(frozen=True)
class CubicLinearization:
    """F^2 = (A F' + B F + 108) / (-108 j) for F = -1/Q, Q a monic cubic."""

    cubic: CubicSpec
    A: Polynomial
    B: Polynomial
    j: Fraction

    @property
    def constant(self) -> Fraction:
        """The constant value of A Q' - B Q + 108 Q^2."""
        return -108 * self.j

    def rhs_series(self, order: int) -> TruncatedSeries:
        """(A F' + B F + 108) / (-108 j), exact through x^order."""
        F = -series_inverse(TruncatedSeries.from_poly(self.cubic.Q, order + 1))
        dF = series_derivative(F)
        F = F.truncate(order)
        return (dF * self.A + F * self.B + 108) * (1 / self.constant)


def cubic_linearization(c: CubicSpec) -> CubicLinearization:
    j = invariant_j(c)
    if j == 0:
        raise DegenerateSpecError("invariant j vanishes")
    Q = c.Q
    if not cubic_has_distinct_roots(Q):
        raise DegenerateSpecError("cubic has a repeated root")
    d1, d2 = Q.derivative(), Q.derivative(2)
    A = (d1 * 16 - d2 * d2) * d1
    B = d1 * d2 * 36 - d2 ** 3 * 2
    lin = CubicLinearization(c, A, B, j)
    residual = A * d1 - B * Q + Q * Q * 108
    if residual != Polynomial([lin.constant]):
        raise IdentityFailure(f"A Q' - B Q + 108 Q^2 = {residual.render()}, expected {lin.constant}")
    return lin


def verify_cubic_F2(c: CubicSpec, x_order: int) -> VerificationReport:
    lin = cubic_linearization(c)
    F = -series_inverse(TruncatedSeries.from_poly(c.Q, x_order))
    rep = VerificationReport(f"cubic F^2 operator for Q = {c.Q.render()} to x^{x_order}")
    return _compare_series(rep, F * F, lin.rhs_series(x_order), x_order)


TRIBONACCI_CUBIC = CubicSpec(Fraction(1, 3), Fraction(1, 3), -1)
TRIB_A = Polynomial([3, 8, 16, 12, 9]) * 4         # 4(9x^4 + 12x^3 + 16x^2 + 8x + 3)
TRIB_B = Polynomial([7, 27, 27, 27]) * 8           # 8(27(x^3 + x^2 + x) + 7)


def verify_tribonacci_F2(x_order: int, constant=108) -> VerificationReport:
    """F^2 = (TRIB_A F' + TRIB_B F + constant) / 176 for F = -1/(x^3 + x^2 + x - 1)."""
    if x_order < 5:
        raise ValueError("x_order must be >= 5")
    F_long = -series_inverse(TruncatedSeries.from_poly(TRIBONACCI_CUBIC.Q, x_order + 1))
    dF = series_derivative(F_long)
    F = F_long.truncate(x_order)
    rhs = (dF * TRIB_A + F * TRIB_B + Fraction(constant)) * Fraction(1, 176)
    rep = VerificationReport(f"Tribonacci F^2 operator to x^{x_order}")
    return _compare_series(rep, F * F, rhs, x_order)


def tribonacci_selfconv_rhs(T, n: int) -> Fraction:
    return Fraction(3 * (n + 1) * T[n + 1] + 2 * (4 * n + 7) * T[n] + 2 * (8 * n + 19) * T[n - 1]
                    + 2 * (6 * n + 15) * T[n - 2] + (9 * n + 27) * T[n - 3], 44)


def verify_tribonacci_selfconv(n_max: int) -> VerificationReport:
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    T = tribonacci(-3, n_max + 1)
    lhs = conv_power([T[m] for m in range(n_max + 1)], 2, n_max)
    rep = VerificationReport(f"Tribonacci self-convolution for 1 <= n <= {n_max}")
    for n in range(1, n_max + 1):
        rep.compare(f"n={n}", lhs[n], tribonacci_selfconv_rhs(T, n))
    return rep
