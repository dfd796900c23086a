from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from eightvertex.scalar import (I, GaussianRational, close, format_scalar, int_to_str, is_exact,
                                parse_scalar, simplify, str_to_int, to_exact, to_float)

from conftest import signed_rationals

gaussians = st.builds(GaussianRational, signed_rationals, signed_rationals)


def test_parse_forms():
    assert parse_scalar("3") == 3
    assert parse_scalar("-2/7") == Fraction(-2, 7)
    assert parse_scalar("1.25") == Fraction(5, 4)
    assert parse_scalar("1.5", exact=False) == 1.5
    assert parse_scalar(["1", "2"]) == GaussianRational(1, 2)
    with pytest.raises(ValueError):
        parse_scalar("")
    with pytest.raises(ValueError):
        parse_scalar("one")


def test_i_squared_is_minus_one():
    assert I * I == -1
    assert simplify(I * I) == Fraction(-1)
    assert is_exact(simplify(I * -I))


@given(gaussians, gaussians)
def test_gaussian_field_ops_match_complex(x, y):
    assert complex(x + y) == pytest.approx(complex(x) + complex(y))
    assert complex(x * y) == pytest.approx(complex(x) * complex(y))
    if y != 0:
        assert (x / y) * y == x


@given(signed_rationals)
def test_format_parse_round_trip(x):
    assert parse_scalar(format_scalar(x)) == x


@given(st.integers(min_value=-10 ** 9, max_value=10 ** 9), st.integers(min_value=1, max_value=5))
def test_huge_integer_text_round_trip(n, power):
    big = n * 10 ** (5000 * power) + 7
    assert str_to_int(int_to_str(big)) == big


def test_huge_fraction_formats_and_parses():
    x = Fraction(3 ** 20000, 7 ** 9000)
    assert parse_scalar(format_scalar(x)) == x


def test_exact_and_float_conversions():
    assert to_exact("1.2") == Fraction(6, 5)
    assert to_exact(0.5) == Fraction(1, 2)
    assert to_float(Fraction(1, 4)) == 0.25
    assert close(0.1 + 0.2, 0.3)
    assert not close(Fraction(1, 3), Fraction(1, 3) + Fraction(1, 10 ** 12))
