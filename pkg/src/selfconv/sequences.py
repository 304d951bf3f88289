"""Recurrence streams (U, V, Tribonacci) and the brute-force convolution oracle."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .poly import DegenerateSpecError, Polynomial, QuadraticSpec
from .series import TruncatedSeries, series_inverse


@dataclass(frozen=True)
class GenFibStream:
    """U_0..U_len and V_0..V_len for x^2 - p x + q."""

    spec: QuadraticSpec
    U: tuple
    V: tuple

    @property
    def length(self) -> int:
        return len(self.U) - 1

    def u(self, m: int) -> Fraction:
        """U_m for any integer m; negative indices use the backward recurrence."""
        if 0 <= m <= self.length:
            return self.U[m]
        if m > self.length:
            raise IndexError(f"U_{m} beyond stream length {self.length}")
        p, q = self.spec.p, self.spec.q
        if q == 0:
            raise DegenerateSpecError("negative indices need q != 0")
        # U_{m-2} = (p U_{m-1} - U_m) / q, walking down from (U_1, U_0)
        hi, lo = self.U[1], self.U[0]
        for _ in range(-m):
            hi, lo = lo, (p * lo - hi) / q
        return lo


def gen_fib(spec: QuadraticSpec, length: int) -> GenFibStream:
    if length < 1:
        raise ValueError("stream length must be >= 1")
    if spec.delta == 0:
        raise DegenerateSpecError("double root: Δ=0")
    p, q = spec.p, spec.q
    U = [Fraction(0), Fraction(1)]
    V = [Fraction(2), p]
    for _ in range(2, length + 1):
        U.append(p * U[-1] - q * U[-2])
        V.append(p * V[-1] - q * V[-2])
    return GenFibStream(spec, tuple(U), tuple(V))


@dataclass(frozen=True)
class TribStream:
    """T_lo..T_hi of the shifted Tribonacci numbers (T_0 = T_1 = 1, T_2 = 2)."""

    lo: int
    values: tuple

    @property
    def hi(self) -> int:
        return self.lo + len(self.values) - 1

    def __getitem__(self, n: int) -> Fraction:
        if not self.lo <= n <= self.hi:
            raise IndexError(f"T_{n} outside window [{self.lo}, {self.hi}]")
        return self.values[n - self.lo]


def tribonacci(lo: int, hi: int) -> TribStream:
    if not lo <= 0 <= hi:
        raise ValueError("window must contain index 0")
    fwd = [Fraction(1), Fraction(1), Fraction(2)]
    while len(fwd) <= hi:
        fwd.append(fwd[-1] + fwd[-2] + fwd[-3])
    back = []  # T_{-1}, T_{-2}, ...
    window = fwd[:3]
    for _ in range(-lo):
        prev = window[2] - window[1] - window[0]
        back.append(prev)
        window = [prev] + window[:2]
    values = list(reversed(back)) + fwd[: hi + 1]
    return TribStream(lo, tuple(values))


def cauchy_product(a: Sequence, b: Sequence, length: int) -> list:
    """Terms 0..length of a * b; entries past the end of either input count as zero."""
    return [sum((a[i] * b[m - i] for i in range(max(0, m - len(b) + 1), min(m, len(a) - 1) + 1)),
                Fraction(0)) for m in range(length + 1)]


def conv_power(seq: Sequence, n: int, length: int) -> list:
    """Terms 0..length of the n-fold self-convolution, by n - 1 Cauchy products."""
    if n < 1:
        raise ValueError("convolution power needs n >= 1")
    if len(seq) < length + 1:
        raise ValueError(f"need {length + 1} terms, got {len(seq)}")
    base = [Fraction(c) for c in seq[: length + 1]]
    out = base
    for _ in range(n - 1):
        out = cauchy_product(out, base, length)
    return out


@dataclass(frozen=True)
class ScaledQuadraticSeries:
    """The generating function -gamma / Q with Q = x^2 - p x + q."""

    gamma: Fraction
    spec: QuadraticSpec

    def __post_init__(self):
        object.__setattr__(self, "gamma", Fraction(self.gamma))
        if self.gamma == 0:
            raise ValueError("gamma must be nonzero")

    def series(self, order: int) -> TruncatedSeries:
        if self.spec.q == 0:
            raise ZeroDivisionError("-gamma/Q has a pole at 0 when q = 0")
        return series_inverse(TruncatedSeries.from_poly(self.spec.Q, order)) * (-self.gamma)


def _check_Fk(spec: QuadraticSpec, k: int, stream: GenFibStream):
    if k < 1:
        raise ValueError("k must be positive")
    q = spec.q
    if q == 0:
        raise DegenerateSpecError("F_k needs q != 0")
    if stream.U[k] == 0:
        raise DegenerateSpecError(f"U_{k} = 0")
    if stream.V[k] ** 2 - 4 * q ** k == 0:
        raise DegenerateSpecError(f"Δ_{k} = 0")


def F_k_series(spec: QuadraticSpec, k: int, order: int) -> TruncatedSeries:
    """sum_n U_{k(n+1)} x^n read straight off the stream."""
    stream = gen_fib(spec, max(k * (order + 1), k, 2))
    _check_Fk(spec, k, stream)
    return TruncatedSeries((stream.U[k * (n + 1)] for n in range(order + 1)), order)


def Q_k(spec: QuadraticSpec, k: int) -> Polynomial:
    """q^-k - (V_k / q^k) x + x^2."""
    stream = gen_fib(spec, max(k, 2))
    qk = spec.q ** k
    return Polynomial([1 / qk, -stream.V[k] / qk, 1])


def F_k_series_by_inverse(spec: QuadraticSpec, k: int, order: int) -> TruncatedSeries:
    """(U_k / q^k) / Q_k expanded as a power series."""
    stream = gen_fib(spec, max(k, 2))
    _check_Fk(spec, k, stream)
    qk = spec.q ** k
    return series_inverse(TruncatedSeries.from_poly(Q_k(spec, k), order)) * (stream.U[k] / qk)
