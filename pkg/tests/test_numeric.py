import decimal
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import rationals
from hyperreduce.numeric import (
    Overflow,
    ZeroDenominator,
    factorial,
    format_rational,
    parse_rational,
    pochhammer,
    rat,
    to_float,
)


def test_rat_canonical():
    assert rat(2, 4) == Fraction(1, 2)
    assert rat(-3, -6) == Fraction(1, 2)
    r = rat(6, -4)
    assert (r.numerator, r.denominator) == (-3, 2)


def test_rat_zero_denominator():
    with pytest.raises(ZeroDenominator):
        rat(5, 0)


def test_pochhammer_examples():
    assert pochhammer(Fraction(7, 3), 0) == 1
    assert pochhammer(Fraction(-2), 3) == 0
    # (1/2)(3/2)(5/2)
    assert pochhammer(Fraction(1, 2), 3) == Fraction(1, 2) * Fraction(3, 2) * Fraction(5, 2) == Fraction(15, 8)


@pytest.mark.parametrize("n, expected", [(0, 1), (1, 1), (5, 120)])
def test_factorial(n, expected):
    assert factorial(n) == expected


def _decimal_float(r: Fraction) -> float:
    with decimal.localcontext() as ctx:
        ctx.prec = 120
        return float(decimal.Decimal(r.numerator) / decimal.Decimal(r.denominator))


def test_to_float():
    assert to_float(Fraction(1, 2)) == 0.5
    assert to_float(Fraction(1, 3)) == _decimal_float(Fraction(1, 3))
    with pytest.raises(Overflow):
        to_float(Fraction(10**400))


@given(st.integers(-10**30, 10**30), st.integers(1, 10**30))
def test_to_float_correctly_rounded(num, den):
    assert to_float(Fraction(num, den)) == _decimal_float(Fraction(num, den))


@pytest.mark.parametrize("text, value", [
    ("1/2", Fraction(1, 2)), ("-3/6", Fraction(-1, 2)), ("7", Fraction(7)), ("0", Fraction(0)),
])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("bad", ["1/-2", "+1", "1.5", "a/b", "", "1/", "--1"])
def test_parse_rational_rejects(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)


def test_parse_rational_zero_den():
    with pytest.raises(ZeroDenominator):
        parse_rational("3/0")


@given(rationals(10**6, 10**6))
def test_format_roundtrip(r):
    text = format_rational(r)
    assert parse_rational(text) == r
    assert "/" not in text or r.denominator != 1


@given(rationals(50, 50), rationals(50, 50).filter(lambda b: b != 0))
def test_field_inverses(a, b):
    assert (a + b) - b == a
    assert (a * b) / b == a


@given(rationals(20, 7), st.integers(0, 50))
def test_pochhammer_recurrence(a, n):
    assert pochhammer(a, n + 1) == pochhammer(a, n) * (a + n)


@given(rationals(20, 7), st.integers(0, 25), st.integers(0, 25))
def test_pochhammer_addition_law(a, m, n):
    assert pochhammer(a, m + n) == pochhammer(a, m) * pochhammer(a + m, n)


@given(st.integers(0, 30), st.integers(0, 40))
def test_pochhammer_terminates(m, j):
    assert (pochhammer(Fraction(-m), j) == 0) == (j > m)
