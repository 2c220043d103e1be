from fractions import Fraction

import pytest

from coxroot.errors import ValueSyntaxError
from coxroot.scalars import (EXACT, FLOAT, ScalarContext, parse_scalar,
                             render_scalar)


def test_parse_integers_and_rationals():
    assert parse_scalar("-5") == Fraction(-5)
    assert parse_scalar("-1/5") == Fraction(-1, 5)
    assert parse_scalar("3/6") == Fraction(1, 2)
    assert parse_scalar(7) == Fraction(7)
    assert parse_scalar(Fraction(2, 3)) == Fraction(2, 3)


def test_parse_decimal_strings_go_float():
    value = parse_scalar("-0.25")
    assert isinstance(value, float) and value == -0.25
    # but an explicit exact mode keeps them as exact decimals
    assert parse_scalar("-0.25", mode=EXACT) == Fraction(-1, 4)


def test_parse_rejects_junk():
    for bad in ("-1/0", "", "1/2/3", "abc", "--1", None, True):
        with pytest.raises(ValueSyntaxError):
            parse_scalar(bad)


def test_render_lowest_terms():
    assert render_scalar(Fraction(2, 4)) == "1/2"
    assert render_scalar(Fraction(-8, 2)) == "-4"
    assert render_scalar(Fraction(0)) == "0"
    assert render_scalar(0.25) == "0.25"
    assert render_scalar(1 / 3) == "0.333333333333"


def test_render_parse_round_trip():
    for value in (Fraction(-1, 5), Fraction(7), Fraction(22, 7)):
        assert parse_scalar(render_scalar(value)) == value


def test_float_context_comparisons_are_relative():
    ctx = ScalarContext(FLOAT, 1e-9)
    assert ctx.eq(1e12, 1e12 + 1)          # relative to magnitude
    assert not ctx.eq(1.0, 1.0 + 1e-6)
    assert ctx.gt(1e-6, 0.0)
    assert not ctx.gt(1e-12, 0.0)          # inside the tolerance band
    assert ctx.is_zero(1e-12)
    assert ctx.sign(-3.0) == -1 and ctx.sign(2e-13) == 0


def test_exact_context_is_literal():
    ctx = ScalarContext(EXACT, 1e-9)
    assert ctx.exact
    assert ctx.gt(Fraction(1, 10 ** 12), ctx.zero())
    assert not ctx.eq(Fraction(1), Fraction(1, 2))
    assert ctx.le(Fraction(1, 2), Fraction(1, 2))
