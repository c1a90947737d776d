from fractions import Fraction

import pytest

from decisionforge.numbers import (
    ExactDecimal,
    decimal_sum,
    exact_number,
    format_exact,
    to_fraction,
)


def test_parse_and_normalize():
    assert ExactDecimal("1.50") == ExactDecimal("1.5")
    assert ExactDecimal("1.50").scale == 1
    assert ExactDecimal("0.10").mantissa == 1
    assert ExactDecimal("-0.25").as_fraction() == Fraction(-1, 4)
    assert ExactDecimal(7).as_fraction() == 7
    assert str(ExactDecimal("03.140")) == "3.14"
    assert str(ExactDecimal("-0.5")) == "-0.5"
    assert str(ExactDecimal("0")) == "0"


@pytest.mark.parametrize("bad", ["", "1.2.3", "1e5", ".5", "1.", "a", "1/2"])
def test_parse_rejects_non_decimals(bad):
    with pytest.raises(ValueError):
        ExactDecimal(bad)


def test_parse_rejects_wrong_types():
    with pytest.raises(TypeError):
        ExactDecimal(1.5)


def test_arithmetic_is_exact():
    a = ExactDecimal("0.1")
    b = ExactDecimal("0.2")
    assert (a + b) == ExactDecimal("0.3")  # the float counterexample
    assert (a + b).scale == 1
    assert a * ExactDecimal("0.15") == ExactDecimal("0.015")
    assert ExactDecimal("1.5") - ExactDecimal("2") == ExactDecimal("-0.5")
    assert ExactDecimal("0.3") * 4 == ExactDecimal("1.2")
    assert ExactDecimal("2.5") + 1 == ExactDecimal("3.5")


def test_comparisons_and_hash():
    assert ExactDecimal("0.5") == Fraction(1, 2)
    assert ExactDecimal("0.5") < ExactDecimal("0.75")
    assert ExactDecimal("2") >= 2
    assert hash(ExactDecimal("1.50")) == hash(ExactDecimal("1.5"))
    assert hash(ExactDecimal("0.5")) == hash(Fraction(1, 2))
    values = {ExactDecimal("1.0"), ExactDecimal("1"), 1}
    assert len(values) == 1


def test_decimal_sum():
    cells = [ExactDecimal(t) for t in ("0.3", "0.6", "0.75", "0.4", "0.6", "0.6", "0.1", "0.4")]
    assert decimal_sum(cells) == ExactDecimal("3.75")
    assert decimal_sum([]) == ExactDecimal(0)
    assert decimal_sum([1, ExactDecimal("0.5")]) == ExactDecimal("1.5")
    # order independence
    assert decimal_sum(reversed(cells)) == ExactDecimal("3.75")


def test_to_fraction():
    assert to_fraction("0.2") == Fraction(1, 5)
    assert to_fraction("1/3") == Fraction(1, 3)
    assert to_fraction(" 2 / 6 ") == Fraction(1, 3)
    assert to_fraction(ExactDecimal("0.25")) == Fraction(1, 4)
    assert to_fraction(3) == 3
    assert to_fraction(Fraction(7, 9)) == Fraction(7, 9)
    with pytest.raises(TypeError):
        to_fraction(0.5)


def test_exact_number_prefers_decimal():
    assert isinstance(exact_number(Fraction(3, 4)), ExactDecimal)
    assert exact_number(Fraction(3, 4)) == ExactDecimal("0.75")
    kept = exact_number(Fraction(1, 3))
    assert isinstance(kept, Fraction) and kept == Fraction(1, 3)


def test_format_exact():
    assert format_exact(ExactDecimal("3.75")) == "3.75"
    assert format_exact(Fraction(41, 10)) == "4.1"
    assert format_exact(5) == "5"
    # non-terminating values keep all nine digits, trailing zeros included
    assert format_exact(Fraction(1, 3)) == "0.333333333"
    assert format_exact(Fraction(2, 3)) == "0.666666667"
    assert format_exact(Fraction(1, 33)) == "0.030303030"
    assert format_exact(Fraction(-1, 3)) == "-0.333333333"
    assert format_exact(Fraction(1, 7), places=3) == "0.143"
