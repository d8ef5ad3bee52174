import cmath

import pytest
from hypothesis import given, strategies as st

from arithmirror.numeric import ModRing
from arithmirror.padic_char import (char_value, complex_gauss_sum, complex_jacobi_sum,
                                    gauss_ratio, jacobi_sum, teichmuller)
from arithmirror.finite_field import make_ext_field

PRIMES = [5, 7, 11, 13]


def test_teichmuller_examples():
    assert teichmuller(1, 7, N=4).lift == ModRing(1, 7 ** 4)
    t = teichmuller(2, 7, N=2).lift
    assert t == ModRing(30, 49)
    assert t.value % 7 == 2 and pow(t.value, 6, 49) == 1


@pytest.mark.parametrize("p", PRIMES)
def test_teichmuller_roots_of_unity_and_multiplicative(p):
    N = 4
    pN = p ** N
    T = {x: teichmuller(x, p, N=N).lift.value for x in range(1, p)}
    for x in range(1, p):
        assert pow(T[x], p - 1, pN) == 1 and T[x] % p == x
        for y in range(1, p):
            assert T[x * y % p] == T[x] * T[y] % pN


def test_teichmuller_extension_field():
    F = make_ext_field(3, 2)
    for x in range(1, F.q):
        t = teichmuller(x, 3, 2, N=3)
        assert t.N == 3 and len(t.lift) == 2


@pytest.mark.parametrize("p", PRIMES)
def test_character_orthogonality(p):
    N = 3
    for i in range(-3, 2 * (p - 1) + 1):
        s = sum(char_value(i, x, p, N) for x in range(1, p)) % p ** N
        assert s == ((p - 1) % p ** N if i % (p - 1) == 0 else 0)


def test_jacobi_examples():
    assert jacobi_sum(0, 0, 7, 3) == ModRing(5, 343)
    assert jacobi_sum(1, 1, 7, 1) == ModRing(0, 7)


@pytest.mark.parametrize("p", PRIMES)
def test_complex_jacobi_absolute_value(p):
    for a in range(1, p - 1):
        for b in range(1, p - 1):
            if (a + b) % (p - 1):
                assert abs(abs(complex_jacobi_sum(a, b, p)) - p ** 0.5) < 1e-9


def test_g0_and_p3_gauss():
    for p in PRIMES + [3]:
        assert complex_gauss_sum(0, p).value == -1
    z = cmath.exp(2j * cmath.pi / 3)
    g = complex_gauss_sum(1, 3).value
    # chi(2) = -1, chi(1) = 1
    assert abs(g - (z - z * z)) < 1e-12
    assert abs(g * complex_gauss_sum(-1, 3).value + 3) < 1e-9


@given(st.sampled_from(PRIMES), st.data())
def test_gauss_product_relation(p, data):
    m = data.draw(st.integers(1, p - 2))
    prod = complex_gauss_sum(m, p).value * complex_gauss_sum(-m, p).value
    assert abs(prod - (-1) ** m * p) < 1e-9


@given(st.sampled_from(PRIMES), st.data())
def test_gauss_jacobi_telescope(p, data):
    a = data.draw(st.integers(1, p - 2))
    b = data.draw(st.integers(1, p - 2))
    if (a + b) % (p - 1) == 0:
        return
    G = lambda m: complex_gauss_sum(m, p).value
    assert abs(G(a) * G(b) / G(a + b) - complex_jacobi_sum(a, b, p)) < 1e-9


def test_gauss_ratio_trivial():
    r = gauss_ratio([2], [2], 7, 4)
    assert r.value == ModRing(1, 7 ** 4)


def test_gauss_ratio_against_jacobi_product():
    p, N = 7, 3
    r = gauss_ratio([1] * 5, [5], p, N)
    J = jacobi_sum(1, 1, p, N) * jacobi_sum(1, 2, p, N) * jacobi_sum(1, 3, p, N) * jacobi_sum(1, 4, p, N)
    assert r.value == J


@pytest.mark.parametrize("p", [7, 13])
def test_precision_coherence(p):
    for m in range(1, p - 1):
        hi = gauss_ratio([5 * m], [m] * 5, p, 5, p_power=4).value.value
        lo = gauss_ratio([5 * m], [m] * 5, p, 4, p_power=4).value.value
        assert hi % p ** 4 == lo
