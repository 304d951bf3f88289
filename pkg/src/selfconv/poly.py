"""Dense univariate polynomials over Q, binary forms and transvections."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .exact import binomial, format_rational

Scalar = Union[int, Fraction]


class DegenerateSpecError(ValueError):
    """Raised for inputs whose characteristic polynomial has a repeated root."""


class Polynomial:
    """Polynomial in one variable; ``coeffs[i]`` is the coefficient of x^i.

    Trailing zeros are stripped, so the zero polynomial has no coefficients
    and ``degree`` is -1 for it.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def constant(cls, c: Scalar) -> "Polynomial":
        return cls([c])

    @classmethod
    def x(cls) -> "Polynomial":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial([other])
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial([{', '.join(format_rational(c) for c in self.coeffs)}])"

    def __str__(self):
        return self.render()

    @staticmethod
    def _coerce(other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self.coeff(i) + other.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Polynomial(c * other for c in self.coeffs)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        return NotImplemented

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative polynomial power")
        out = Polynomial([1])
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __call__(self, x: Scalar) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    evaluate = __call__

    def derivative(self, times: int = 1) -> "Polynomial":
        cs = self.coeffs
        for _ in range(times):
            cs = tuple(i * c for i, c in enumerate(cs))[1:]
        return Polynomial(cs)

    def __divmod__(self, other: "Polynomial"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.leading()
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - dq - 1, -1, -1):
            f = rem[k + dq] / lead
            quot[k] = f
            if f:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= f * b
        return Polynomial(quot), Polynomial(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def render(self, var: str = "x", latex: bool = False) -> str:
        """Descending powers with exact rational coefficients."""
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if i == 0:
                mono = ""
            elif i == 1:
                mono = var
            else:
                mono = f"{var}^{{{i}}}" if latex else f"{var}^{i}"
            if latex:
                num = (r"\frac{%d}{%d}" % (a.numerator, a.denominator)
                       if a.denominator != 1 else str(a.numerator))
                body = mono if (a == 1 and mono) else num + (" " + mono if mono else "")
            else:
                num = format_rational(a)
                body = mono if (a == 1 and mono) else num + ("*" + mono if mono else "")
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


X = Polynomial.x()


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd over Q (zero for two zero inputs)."""
    while not b.is_zero():
        a, b = b, a % b
    return a / a.leading() if not a.is_zero() else a


def falling_factorial_poly(base: Polynomial, i: int) -> Polynomial:
    """base (base - 1) ... (base - i + 1) as a polynomial."""
    if i < 0:
        raise ValueError(f"falling factorial needs i >= 0, got {i}")
    out = Polynomial([1])
    for t in range(i):
        out = out * (base - t)
    return out


@dataclass(frozen=True)
class QuadraticSpec:
    """Monic quadratic x^2 - p x + q with distinct roots."""

    p: Fraction
    q: Fraction

    def __post_init__(self):
        object.__setattr__(self, "p", Fraction(self.p))
        object.__setattr__(self, "q", Fraction(self.q))
        if self.delta == 0:
            raise DegenerateSpecError("double root: Δ=0")

    @property
    def delta(self) -> Fraction:
        return self.p * self.p - 4 * self.q

    @property
    def Q(self) -> Polynomial:
        return Polynomial([self.q, -self.p, 1])


@dataclass(frozen=True)
class CubicSpec:
    """Monic cubic x^3 + 3a x^2 + 3b x + c."""

    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    @property
    def Q(self) -> Polynomial:
        return Polynomial([self.c, 3 * self.b, 3 * self.a, 1])

    def binary_form(self) -> "BinaryForm":
        return homogenize(self.Q, 3)


@dataclass(frozen=True)
class BinaryForm:
    """Homogeneous form of degree d; ``coeffs[i]`` multiplies x^(d-i) y^i."""

    degree: int
    coeffs: tuple

    def __post_init__(self):
        cs = tuple(Fraction(c) for c in self.coeffs)
        if len(cs) != self.degree + 1:
            raise ValueError(
                f"binary form of degree {self.degree} needs {self.degree + 1} coefficients, got {len(cs)}")
        object.__setattr__(self, "coeffs", cs)

    def __mul__(self, other: "BinaryForm") -> "BinaryForm":
        out = [Fraction(0)] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return BinaryForm(self.degree + other.degree, tuple(out))

    def __add__(self, other: "BinaryForm") -> "BinaryForm":
        if self.degree != other.degree:
            raise ValueError("cannot add forms of different degrees")
        return BinaryForm(self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, c: Scalar) -> "BinaryForm":
        return BinaryForm(self.degree, tuple(a * c for a in self.coeffs))

    def dx(self) -> "BinaryForm":
        d = self.degree
        if d == 0:
            return BinaryForm(0, (0,))
        return BinaryForm(d - 1, tuple((d - i) * self.coeffs[i] for i in range(d)))

    def dy(self) -> "BinaryForm":
        d = self.degree
        if d == 0:
            return BinaryForm(0, (0,))
        return BinaryForm(d - 1, tuple(i * self.coeffs[i] for i in range(1, d + 1)))

    def partial(self, nx: int, ny: int) -> "BinaryForm":
        f = self
        for _ in range(nx):
            f = f.dx()
        for _ in range(ny):
            f = f.dy()
        return f

    def dehomogenize(self) -> Polynomial:
        """P(x, 1) as a polynomial in x."""
        d = self.degree
        return Polynomial(self.coeffs[d - k] for k in range(d + 1))

    def is_constant(self) -> bool:
        return self.degree == 0


def homogenize(Q: Polynomial, d: int) -> BinaryForm:
    """The degree-d form y^d Q(x/y)."""
    if Q.degree > d:
        raise ValueError(f"degree {Q.degree} polynomial does not fit in a degree {d} form")
    return BinaryForm(d, tuple(Q.coeff(d - i) for i in range(d + 1)))


def transvection(P: BinaryForm, R: BinaryForm, k: int) -> BinaryForm:
    """k-th transvectant from the unnormalized Cayley operator.

    Sum over i of (-1)^i C(k, i) d^k P/dx^(k-i) dy^i * d^k R/dx^i dy^(k-i).
    """
    if k < 0 or k > min(P.degree, R.degree):
        raise ValueError(f"transvection order {k} exceeds form degrees {P.degree}, {R.degree}")
    out = None
    for i in range(k + 1):
        term = (P.partial(k - i, i) * R.partial(i, k - i)).scale((-1) ** i * binomial(k, i))
        out = term if out is None else out + term
    return out


def invariant_j(c: CubicSpec) -> Fraction:
    a, b, cc = c.a, c.b, c.c
    return 6 * a * b * cc - 4 * b ** 3 - 4 * a ** 3 * cc + 3 * a * a * b * b - cc * cc


# With the raw operator each order-2 transvectant carries a factor 2! more
# than the 1/k!-normalized one, hence 1296 * 2**3.
J_TRANSVECTANT_SCALE = Fraction(1, 1296 * 8)


def invariant_j_by_transvection(c: CubicSpec) -> Fraction:
    P = c.binary_form()
    H = transvection(P, P, 2)
    inv = transvection(H, H, 2)
    assert inv.is_constant()
    return inv.coeffs[0] * J_TRANSVECTANT_SCALE


def cubic_has_distinct_roots(Q: Polynomial) -> bool:
    return poly_gcd(Q, Q.derivative()).degree == 0


def product(polys: Sequence[Polynomial]) -> Polynomial:
    out = Polynomial([1])
    for p in polys:
        out = out * p
    return out
