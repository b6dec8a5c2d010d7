import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lagrange_weyl.torus import TorusExponent, lcm

exps = st.builds(TorusExponent, st.integers(-50, 50), st.integers(1, 24))


def test_reduced_form():
    t = TorusExponent(4, 6)
    assert (t.numerator, t.modulus) == (2, 3)
    assert TorusExponent(-1, 4) == TorusExponent(3, 4)
    assert TorusExponent(5, 5).is_one


def test_product_lives_over_lcm():
    t = TorusExponent(1, 4) * TorusExponent(1, 6)
    assert t.turns == Fraction(5, 12)
    assert lcm(4, 6) % t.modulus == 0


@given(exps, exps, exps)
def test_associative_and_inverse(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert (a * a.inverse()).is_one
    assert a / b == a * b.inverse()


@given(exps)
def test_complex_value(a):
    assert abs(complex(a) - cmath.exp(2j * math.pi * a.numerator / a.modulus)) < 1e-12


def test_special_values_are_exact():
    assert complex(TorusExponent(1, 2)) == -1
    assert complex(TorusExponent(1, 4)) == 1j
    assert complex(TorusExponent(3, 4)) == -1j


def test_string_and_json():
    assert str(TorusExponent(0, 3)) == "1"
    assert str(TorusExponent(1, 2)) == "-1"
    assert str(TorusExponent(2, 3)) == "e(2/3)"
    assert TorusExponent(2, 3).to_json() == [2, 3]


def test_over_rejects_coarser_modulus():
    assert TorusExponent(1, 3).over(6) == 2
    with pytest.raises(ValueError):
        TorusExponent(1, 3).over(4)


def test_bad_modulus():
    with pytest.raises(ValueError):
        TorusExponent(1, 0)
