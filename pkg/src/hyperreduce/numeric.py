"""Exact rational scalars and the Pochhammer/factorial primitives.

Rationals are :class:`fractions.Fraction` values, which are always kept in
lowest terms with a positive denominator.  This module adds the strict
``"p/q"`` string codec used at every I/O boundary of the package.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

Rational = Fraction

_RATIONAL_RE = re.compile(r"^(-?\d+)(?:/(\d+))?$")


class ZeroDenominator(ZeroDivisionError):
    pass


class Overflow(OverflowError):
    pass


def rat(n: int, d: int = 1) -> Fraction:
    if d == 0:
        raise ZeroDenominator(f"rational {n}/0 has a zero denominator")
    return Fraction(n, d)


def as_rational(value) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are refused: they would silently smuggle binary rounding into
    the exact path.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot use {value!r} ({type(value).__name__}) as an exact rational")


def parse_rational(text: str) -> Fraction:
    m = _RATIONAL_RE.match(text.strip())
    if m is None:
        raise ValueError(f"not a rational of the form 'p' or 'p/q': {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    return rat(num, den)


def format_rational(r: Fraction) -> str:
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


def pochhammer(a, n: int):
    """Rising factorial ``a (a+1) ... (a+n-1)``; ``1`` when ``n == 0``.

    Works for any type supporting ``+`` and ``*`` with ints (Fraction,
    float, int).  A nonpositive integer ``a`` with ``n > -a`` gives an exact
    zero because the product passes through the factor ``0``.
    """
    if n < 0:
        raise ValueError("pochhammer length must be nonnegative")
    result = a * 0 + 1
    for i in range(n):
        term = a + i
        if term == 0:
            return a * 0
        result *= term
    return result


def factorial(n: int) -> int:
    return math.factorial(n)


def to_float(r: Fraction) -> float:
    """Correctly rounded (round-half-even) double nearest to ``r``."""
    try:
        return float(r)
    except OverflowError as exc:
        raise Overflow(f"{format_rational(r)[:40]}... exceeds double range") from exc


def is_nonpositive_integer(r: Fraction) -> bool:
    return r.denominator == 1 and r.numerator <= 0
