from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from scaledfree.errors import IrrationalNormError
from scaledfree.scalars import (
    I,
    UNBOUNDED,
    NormValue,
    Scalar,
    as_fraction,
    bound_text,
    format_rational,
)

from strategies import small_rationals


def test_as_fraction_rejects_floats_and_bools():
    with pytest.raises(TypeError):
        as_fraction(0.5)
    with pytest.raises(TypeError):
        as_fraction(True)
    assert as_fraction(3) == Fraction(3)


def test_format_rational():
    assert format_rational(Fraction(3, 2)) == "3/2"
    assert format_rational(Fraction(-4)) == "-4"


def test_unbounded_orders_above_everything():
    assert UNBOUNDED > NormValue(10**9)
    assert not UNBOUNDED < 5
    assert str(UNBOUNDED) == "unbounded"
    assert bound_text(UNBOUNDED) == "unbounded"


def test_sqrt_simplifies_square_factors():
    assert NormValue.sqrt(8) == NormValue.sqrt(2) * 2
    assert NormValue.sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert NormValue.sqrt(Fraction(9, 4)).is_exact


def test_irrational_values_refuse_exact():
    r2 = NormValue.sqrt(2)
    assert not r2.is_exact
    with pytest.raises(IrrationalNormError):
        r2.exact


def test_sqrt2_comparisons_are_exact():
    r2 = NormValue.sqrt(2)
    assert Fraction(141, 100) < r2 < Fraction(142, 100)
    assert r2 * r2 == 2
    # (sqrt2 + sqrt3)^2 = 5 + 2 sqrt6 is just below 10
    assert NormValue.sqrt(2) + NormValue.sqrt(3) < NormValue.sqrt(10)
    assert NormValue.sqrt(2) + NormValue.sqrt(3) + Fraction(1, 50) > NormValue.sqrt(10)


def test_interval_text_respects_width():
    lo, hi = NormValue.sqrt(2).bounds(Fraction(1, 1000))
    assert lo < NormValue.sqrt(2) < hi
    assert hi - lo <= Fraction(1, 1000)
    text = NormValue.sqrt(2).to_text(Fraction(1, 1000))
    assert text.startswith("[") and text.endswith("]")
    assert NormValue(Fraction(5, 3)).to_text() == "5/3"


def test_gaussian_modulus():
    assert Scalar(3, 4).modulus() == 5
    assert Scalar(1, 1).modulus() == NormValue.sqrt(2)
    assert I * I == -1
    assert str(Scalar(Fraction(1, 2), Fraction(3, 4))) == "1/2+3/4i"


@given(small_rationals, small_rationals, small_rationals, small_rationals)
def test_modulus_is_multiplicative(a, b, c, d):
    x, y = Scalar(a, b), Scalar(c, d)
    assert (x * y).modulus() == x.modulus() * y.modulus()


@given(small_rationals, small_rationals, small_rationals, small_rationals)
def test_modulus_triangle_inequality(a, b, c, d):
    x, y = Scalar(a, b), Scalar(c, d)
    assert (x + y).modulus() <= x.modulus() + y.modulus()


@given(small_rationals, small_rationals)
def test_division_inverts_multiplication(a, b):
    x = Scalar(a, b)
    if x:
        assert (Scalar(7, -2) * x) / x == Scalar(7, -2)


@given(st.lists(st.integers(1, 50), min_size=1, max_size=4), st.lists(small_rationals, min_size=4, max_size=4))
def test_surd_sums_agree_with_float_order(radicands, coeffs):
    total = NormValue(0)
    approx = 0.0
    for m, c in zip(radicands, coeffs):
        c = abs(c)
        total = total + NormValue.sqrt(m) * c
        approx += float(c) * m**0.5
    lo, hi = total.bounds(Fraction(1, 10**6))
    assert float(lo) - 1e-9 <= approx <= float(hi) + 1e-9
