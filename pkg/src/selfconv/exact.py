"""Exact scalars: Python ints and normalized ``Fraction`` values.

Every quantity in the package is a :class:`fractions.Fraction`; the helpers
here cover the few combinatorial scalars the rest of the code needs, plus the
parse/serialize conventions used by the command line front end.
"""
from __future__ import annotations

import re
import sys
from fractions import Fraction
from math import comb, factorial  # noqa: F401  factorial re-exported
from typing import Union

Rational = Fraction
RationalLike = Union[int, Fraction]

# exact values in JSON payloads can exceed the default str<->int digit cap
if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def binomial(n: int, k: int) -> int:
    """C(n, k) for n >= 0, zero when k falls outside [0, n]."""
    if n < 0:
        raise ValueError(f"binomial needs n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return comb(n, k)


def falling_factorial(s: RationalLike, i: int) -> RationalLike:
    """s (s-1) ... (s-i+1); the empty product for i = 0."""
    if i < 0:
        raise ValueError(f"falling factorial needs i >= 0, got {i}")
    out = 1
    for t in range(i):
        out *= s - t
    return out


def rational_pow(r: RationalLike, e: int) -> Fraction:
    r = Fraction(r)
    if r == 0 and e < 0:
        raise ZeroDivisionError("zero base with negative exponent")
    return r ** e


def parse_rational(text: str) -> Fraction:
    """Parse ``"a/b"`` or an integer literal. Decimals are refused."""
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ValueError(f"not an exact rational literal: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(r: RationalLike) -> str:
    r = Fraction(r)
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


def rational_to_json(r: RationalLike) -> dict:
    r = Fraction(r)
    return {"num": str(r.numerator), "den": str(r.denominator)}


def rational_from_json(obj: dict) -> Fraction:
    return Fraction(int(obj["num"]), int(obj["den"]))
