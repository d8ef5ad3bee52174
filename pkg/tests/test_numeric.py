from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st

from arithmirror.numeric import (ModRing, factorial_ratio, harmonic, modring_pow,
                                 rat_valuation, valuation)


@pytest.mark.parametrize("k,order,expected", [(0, 1, 0), (1, 1, 1), (3, 1, Fraction(11, 6)),
                                              (2, 2, Fraction(5, 4))])
def test_harmonic_values(k, order, expected):
    assert harmonic(k, order) == expected


@pytest.mark.parametrize("a,b,e,expected", [(0, 0, 5, 1), (5, 1, 5, 120), (10, 2, 5, 113400)])
def test_factorial_ratio(a, b, e, expected):
    assert factorial_ratio(a, b, e) == expected


def test_modring_pow_examples():
    assert modring_pow(ModRing(5, 12), 0) == ModRing(1, 12)
    assert modring_pow(ModRing(2, 49), 49) == ModRing(30, 49)
    assert modring_pow(ModRing(1, 97), 12345) == ModRing(1, 97)


def test_mixed_moduli_fail():
    with pytest.raises(ValueError):
        ModRing(1, 7) + ModRing(1, 49)


def test_valuations():
    assert valuation(7 ** 3 * 10, 7) == 3
    assert valuation(0, 7) is None
    assert rat_valuation(Fraction(5, 49), 7) == -2


@given(st.integers(1, 60), st.integers(1, 4))
def test_harmonic_step(k, r):
    assert harmonic(k, r) - harmonic(k - 1, r) == Fraction(1, k ** r)


@given(st.fractions(), st.fractions(), st.fractions())
def test_rational_field_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    for x in (a + b, a * b, a - c):
        assert x.denominator > 0 and gcd(x.numerator, x.denominator) == 1


@given(st.integers(0, 10 ** 6), st.integers(2, 10 ** 6), st.integers(0, 200), st.integers(0, 200))
def test_modring_pow_additive(x, m, a, b):
    X = ModRing(x, m)
    assert modring_pow(X, a + b) == modring_pow(X, a) * modring_pow(X, b)
