import pytest
from hypothesis import given, strategies as st

from arithmirror.finite_field import (FieldError, embedding, enumerate_field, make_ext_field,
                                      trace)

FIELDS = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 3), (3, 2), (5, 2), (7, 2)]


def test_prime_field_generators():
    assert make_ext_field(7).generator == 3
    assert make_ext_field(2).generator == 1


@pytest.mark.parametrize("p,r", FIELDS)
def test_generator_has_full_order(p, r):
    F = make_ext_field(p, r)
    seen = set()
    x = 1
    for _ in range(F.q - 1):
        x = F.mul(x, F.generator)
        seen.add(x)
    assert seen == set(range(1, F.q))


@pytest.mark.parametrize("p,r", FIELDS)
def test_frobenius_permutes_and_fixes_prime_field(p, r):
    F = make_ext_field(p, r)
    images = [F.frobenius(x) for x in range(F.q)]
    assert sorted(images) == list(range(F.q))
    fixed = [x for x in range(F.q) if images[x] == x]
    assert fixed == list(range(p))


def test_enumeration():
    assert list(enumerate_field(make_ext_field(2))) == [0, 1]
    assert len(set(enumerate_field(make_ext_field(7)))) == 7
    assert len(set(enumerate_field(make_ext_field(3, 2)))) == 9
    with pytest.raises(FieldError):
        enumerate_field(make_ext_field(5, 2), cap=10)


def test_trace_small_cases():
    F = make_ext_field(7)
    assert all(trace(x, F) == x for x in range(7))
    F9 = make_ext_field(3, 2)
    assert trace(0, F9) == 0
    for x in range(9):
        t = F9.add(x, F9.pow(x, 3))
        assert trace(x, F9) == t


@given(st.sampled_from([(3, 2), (2, 3), (5, 2)]), st.data())
def test_trace_linear(pr, data):
    F = make_ext_field(*pr)
    x = data.draw(st.integers(0, F.q - 1))
    y = data.draw(st.integers(0, F.q - 1))
    c = data.draw(st.integers(0, F.p - 1))
    lhs = trace(F.add(F.mul(F.scalar(c), x), y), F)
    assert lhs == (c * trace(x, F) + trace(y, F)) % F.p


@given(st.sampled_from(FIELDS), st.data())
def test_field_axioms(pr, data):
    F = make_ext_field(*pr)
    el = st.integers(0, F.q - 1)
    x, y, z = data.draw(el), data.draw(el), data.draw(el)
    assert F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z))
    if x:
        assert F.mul(x, F.inv(x)) == 1


def test_embedding_is_a_homomorphism():
    small, big = make_ext_field(5, 2), make_ext_field(5, 4)
    e = embedding(small, big)
    assert len(set(e)) == small.q
    for x in range(small.q):
        for y in (1, 7, 13, 24):
            assert e[small.mul(x, y)] == big.mul(e[x], e[y])
            assert e[small.add(x, y)] == big.add(e[x], e[y])
    assert embedding(make_ext_field(5), big) == list(range(5))
