"""Truncated power series in one and two variables over Q.

Orders are always explicit: an operation never returns more coefficients than
its inputs determine.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence, Union

from .poly import Polynomial, QuadraticSpec

Scalar = Union[int, Fraction]


class OrderMismatchError(ValueError):
    pass


def _cauchy(a: Sequence, b: Sequence, n: int, zero):
    """First n+1 coefficients of the product of two coefficient lists."""
    out = []
    for m in range(n + 1):
        acc = zero
        for i in range(max(0, m - len(b) + 1), min(m, len(a) - 1) + 1):
            acc = acc + a[i] * b[m - i]
        out.append(acc)
    return out


def _exp_coeffs(s: Sequence, one, zero):
    # E' = S' E  =>  n e_n = sum_{k=1}^{n} k s_k e_{n-k}
    e = [one]
    for n in range(1, len(s)):
        acc = zero
        for k in range(1, n + 1):
            if s[k] != zero:
                acc = acc + s[k] * e[n - k] * k
        e.append(acc * Fraction(1, n))
    return e


class TruncatedSeries:
    """c_0 + c_1 t + ... + c_N t^N + O(t^(N+1))."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Iterable[Scalar], order: Optional[int] = None):
        cs = [Fraction(c) for c in coeffs]
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise ValueError("series order must be nonnegative")
        cs = cs[: order + 1] + [Fraction(0)] * (order + 1 - len(cs))
        self.order = order
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def from_poly(cls, p: Polynomial, order: int) -> "TruncatedSeries":
        return cls(p.coeffs, order)

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls([1], order)

    def to_poly(self) -> Polynomial:
        return Polynomial(self.coeffs)

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise OrderMismatchError(f"cannot extend order {self.order} to {order}")
        return TruncatedSeries(self.coeffs, order)

    def __getitem__(self, n: int) -> Fraction:
        return coefficient_at(self, n)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __repr__(self):
        return f"TruncatedSeries({[str(c) for c in self.coeffs]}, order={self.order})"

    def __add__(self, other):
        return series_add(self, other)

    def __sub__(self, other):
        return series_add(self, -other)

    def __neg__(self):
        return TruncatedSeries((-c for c in self.coeffs), self.order)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries((c * other for c in self.coeffs), self.order)
        if isinstance(other, Polynomial):
            other = TruncatedSeries.from_poly(other, self.order)
        return series_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return series_inverse(self) ** (-n)
        out = TruncatedSeries.one(self.order)
        for _ in range(n):
            out = out * self
        return out

    def derivative(self, times: int = 1) -> "TruncatedSeries":
        out = self
        for _ in range(times):
            out = series_derivative(out)
        return out


def _coerce(a) -> TruncatedSeries:
    if isinstance(a, TruncatedSeries):
        return a
    raise TypeError(f"expected TruncatedSeries, got {type(a).__name__}")


def series_add(a: TruncatedSeries, b, strict: bool = False) -> TruncatedSeries:
    if isinstance(b, (int, Fraction)):
        b = TruncatedSeries([b], a.order)
    b = _coerce(b)
    if strict and a.order != b.order:
        raise OrderMismatchError(f"orders {a.order} and {b.order} differ")
    n = min(a.order, b.order)
    return TruncatedSeries((a.coeffs[i] + b.coeffs[i] for i in range(n + 1)), n)


def series_mul(a: TruncatedSeries, b: TruncatedSeries, strict: bool = False) -> TruncatedSeries:
    if strict and a.order != b.order:
        raise OrderMismatchError(f"orders {a.order} and {b.order} differ")
    n = min(a.order, b.order)
    return TruncatedSeries(_cauchy(a.coeffs, b.coeffs, n, Fraction(0)), n)


def series_derivative(a: TruncatedSeries) -> TruncatedSeries:
    if a.order == 0:
        raise OrderMismatchError("derivative of an order-0 series carries no information")
    return TruncatedSeries((i * a.coeffs[i] for i in range(1, a.order + 1)), a.order - 1)


def series_integral(a: TruncatedSeries, constant: Scalar = 0) -> TruncatedSeries:
    cs = [Fraction(constant)] + [a.coeffs[i] / (i + 1) for i in range(a.order + 1)]
    return TruncatedSeries(cs, a.order + 1)


def coefficient_at(a: TruncatedSeries, n: int) -> Fraction:
    if n < 0:
        return Fraction(0)
    if n > a.order:
        raise OrderMismatchError(f"coefficient {n} beyond series order {a.order}")
    return a.coeffs[n]


def series_inverse(s: TruncatedSeries) -> TruncatedSeries:
    if s.coeffs[0] == 0:
        raise ZeroDivisionError("series with zero constant term is not invertible")
    inv0 = 1 / s.coeffs[0]
    out = [inv0]
    for n in range(1, s.order + 1):
        acc = sum((s.coeffs[k] * out[n - k] for k in range(1, n + 1)), Fraction(0))
        out.append(-acc * inv0)
    return TruncatedSeries(out, s.order)


def series_exp(s: TruncatedSeries) -> TruncatedSeries:
    if s.coeffs[0] != 0:
        raise ValueError("formal exponential needs a zero constant term")
    return TruncatedSeries(_exp_coeffs(s.coeffs, Fraction(1), Fraction(0)), s.order)


def series_log(s: TruncatedSeries) -> TruncatedSeries:
    """log(s) for s(0) = 1, as the antiderivative of s'/s."""
    if s.coeffs[0] != 1:
        raise ValueError("formal logarithm needs constant term 1")
    if s.order == 0:
        return TruncatedSeries([0], 0)
    return series_integral(series_derivative(s) * series_inverse(s.truncate(s.order - 1)))


def binomial_series(exponent: Scalar, order: int) -> TruncatedSeries:
    """(1 + t)^exponent for a rational exponent."""
    e = Fraction(exponent)
    cs = [Fraction(1)]
    for n in range(1, order + 1):
        cs.append(cs[-1] * (e - n + 1) / n)
    return TruncatedSeries(cs, order)


def rescale(s: TruncatedSeries, factor: Scalar) -> TruncatedSeries:
    """s(factor * t)."""
    f = Fraction(factor)
    return TruncatedSeries((c * f ** n for n, c in enumerate(s.coeffs)), s.order)


def inv_sqrt_one_minus_4y(order: int) -> TruncatedSeries:
    """(1 - 4y)^(-1/2) to the given order."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    return rescale(binomial_series(Fraction(-1, 2), order), -4)


def geometric(ratio: Scalar, order: int) -> TruncatedSeries:
    """1 / (1 - ratio * t)."""
    r = Fraction(ratio)
    return TruncatedSeries((r ** n for n in range(order + 1)), order)


class BivariateSeries:
    """Series in y whose coefficients are polynomials in a second variable.

    With ``x_order`` set, every coefficient is read as a truncated series in
    the second variable and products drop terms above that degree.
    """

    __slots__ = ("y_order", "coeffs", "x_order")

    def __init__(self, coeffs: Iterable[Polynomial], y_order: Optional[int] = None,
                 x_order: Optional[int] = None):
        cs = list(coeffs)
        if y_order is None:
            y_order = len(cs) - 1
        cs = cs[: y_order + 1] + [Polynomial()] * (y_order + 1 - len(cs))
        if x_order is not None:
            cs = [_trunc_poly(p, x_order) for p in cs]
        self.y_order = y_order
        self.x_order = x_order
        self.coeffs: tuple[Polynomial, ...] = tuple(cs)

    def coefficient(self, n: int) -> Polynomial:
        if n < 0:
            return Polynomial()
        if n > self.y_order:
            raise OrderMismatchError(f"y^{n} beyond order {self.y_order}")
        return self.coeffs[n]

    def cell(self, i: int, n: int) -> Fraction:
        """Coefficient of (second variable)^i y^n."""
        return self.coefficient(n).coeff(i)

    def __eq__(self, other):
        if not isinstance(other, BivariateSeries):
            return NotImplemented
        return (self.y_order, self.x_order, self.coeffs) == (other.y_order, other.x_order, other.coeffs)

    def __repr__(self):
        return f"BivariateSeries({[str(p) for p in self.coeffs]}, x_order={self.x_order})"

    def _x_order(self, other: "BivariateSeries") -> Optional[int]:
        orders = [o for o in (self.x_order, other.x_order) if o is not None]
        return min(orders) if orders else None

    def __add__(self, other: "BivariateSeries") -> "BivariateSeries":
        n = min(self.y_order, other.y_order)
        return BivariateSeries((self.coeffs[i] + other.coeffs[i] for i in range(n + 1)),
                               n, self._x_order(other))

    def __neg__(self):
        return BivariateSeries((-p for p in self.coeffs), self.y_order, self.x_order)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Polynomial)):
            return BivariateSeries((p * other for p in self.coeffs), self.y_order, self.x_order)
        if isinstance(other, TruncatedSeries):
            other = BivariateSeries.from_y_series(other)
        n = min(self.y_order, other.y_order)
        xo = self._x_order(other)
        if xo is None:
            cs = _cauchy(self.coeffs, other.coeffs, n, Polynomial())
        else:
            cs = []
            for m in range(n + 1):
                acc = Polynomial()
                for i in range(m + 1):
                    acc = acc + _trunc_mul(self.coeffs[i], other.coeffs[m - i], xo)
                cs.append(acc)
        return BivariateSeries(cs, n, xo)

    __rmul__ = __mul__

    @classmethod
    def from_y_series(cls, s: TruncatedSeries) -> "BivariateSeries":
        return cls((Polynomial([c]) for c in s.coeffs), s.order)

    def map(self, f: Callable[[Polynomial], Polynomial]) -> "BivariateSeries":
        return BivariateSeries((f(p) for p in self.coeffs), self.y_order, self.x_order)

    def dy(self) -> "BivariateSeries":
        if self.y_order == 0:
            raise OrderMismatchError("y-derivative of an order-0 series")
        return BivariateSeries((self.coeffs[n] * n for n in range(1, self.y_order + 1)),
                               self.y_order - 1, self.x_order)

    def dz(self) -> "BivariateSeries":
        return self.map(lambda p: p.derivative())

    def times_z(self) -> "BivariateSeries":
        return self.map(lambda p: Polynomial((0,) + p.coeffs) if p.coeffs else p)

    def div_y(self) -> "BivariateSeries":
        if not self.coeffs[0].is_zero():
            raise ValueError("series is not divisible by y")
        return BivariateSeries(self.coeffs[1:], self.y_order - 1, self.x_order)

    def at_z_zero(self) -> TruncatedSeries:
        return TruncatedSeries((p.coeff(0) for p in self.coeffs), self.y_order)


def _trunc_poly(p: Polynomial, order: int) -> Polynomial:
    return p if p.degree <= order else Polynomial(p.coeffs[: order + 1])


def _trunc_mul(a: Polynomial, b: Polynomial, order: int) -> Polynomial:
    if not a.coeffs or not b.coeffs:
        return Polynomial()
    out = [Fraction(0)] * min(len(a.coeffs) + len(b.coeffs) - 1, order + 1)
    for i, u in enumerate(a.coeffs):
        if u and i <= order:
            for j in range(min(len(b.coeffs), order + 1 - i)):
                out[i + j] += u * b.coeffs[j]
    return Polynomial(out)


def bivariate_exp(s: BivariateSeries) -> BivariateSeries:
    if not s.coeffs[0].is_zero():
        raise ValueError("formal exponential needs zero y^0 coefficient")
    if s.x_order is not None:
        raise NotImplementedError("exp of x-truncated bivariate series")
    return BivariateSeries(_exp_coeffs(s.coeffs, Polynomial([1]), Polynomial()), s.y_order)


def build_A(y_order: int) -> BivariateSeries:
    """y/(1-4y) * exp(z/2 ((1-4y)^(-1/2) - 1)) through y^y_order."""
    if y_order < 1:
        raise ValueError("build_A needs y_order >= 1")
    root = inv_sqrt_one_minus_4y(y_order)
    half_z_B = BivariateSeries(
        [Polynomial()] + [Polynomial([0, c / 2]) for c in root.coeffs[1:]], y_order)
    prefactor = TruncatedSeries([0] + list(geometric(4, y_order - 1).coeffs), y_order)
    return bivariate_exp(half_z_B) * prefactor


@dataclass(frozen=True)
class PolarizationShift:
    """x' = Q'(x)/2 ((1 - 4y/Δ)^(-1/2) - 1), as a y-series with x-polynomial coefficients."""

    delta: Fraction
    shift: BivariateSeries

    @classmethod
    def for_spec(cls, spec: QuadraticSpec, y_order: int) -> "PolarizationShift":
        root = rescale(inv_sqrt_one_minus_4y(y_order), Fraction(1) / spec.delta)
        dQ = spec.Q.derivative()
        cs = [Polynomial()] + [dQ * (c / 2) for c in root.coeffs[1:]]
        return cls(spec.delta, BivariateSeries(cs, y_order))


def taylor_shift(F: TruncatedSeries, X: Union[PolarizationShift, BivariateSeries],
                 y_order: int) -> BivariateSeries:
    """F(x + X) = sum_i X^i/i! F^(i)(x), collected by powers of y.

    X must have zero y^0 coefficient, so the inner sum stops at i = y_order.
    The result is exact through x^(F.order - y_order).
    """
    shift = X.shift if isinstance(X, PolarizationShift) else X
    if not shift.coeffs[0].is_zero():
        raise ValueError("shift must vanish at y = 0")
    if shift.y_order < y_order:
        raise OrderMismatchError(f"shift known to y^{shift.y_order}, need y^{y_order}")
    x_order = F.order - y_order
    if x_order < 0:
        raise OrderMismatchError(
            f"F known to x^{F.order}; {y_order} derivatives leave nothing")
    shift = BivariateSeries(shift.coeffs, y_order, x_order)
    power = BivariateSeries([Polynomial([1])], y_order, x_order)
    deriv = F
    total = BivariateSeries([], y_order, x_order)
    fact = 1
    for i in range(y_order + 1):
        if i:
            power = power * shift
            deriv = series_derivative(deriv)
            fact *= i
        dpoly = Polynomial(deriv.coeffs[: x_order + 1])
        total = total + power.map(lambda p: _trunc_mul(p, dpoly, x_order) / fact)
    return total
