import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from arithmirror.counting import (CapExceeded, count_affine_cone, count_affine_curve,
                                  count_dwork_fast, count_family, count_mirror_closure,
                                  count_projective, count_table, count_torus, count_torus_fast,
                                  count_weighted_orbits_explicit, count_weighted_projective,
                                  dwork_count, mirror_closure_polynomial)
from arithmirror.families import (DworkFamily, FermatDeformation, Polynomial, SingularMirror,
                                  SuperellipticCurve, defining_polynomial, k3_3678)
from arithmirror.finite_field import make_ext_field


def naive_projective(n, psi, p):
    """Prime-field Dwork count by plain loops over normalized representatives."""
    N = 0
    for x in itertools.product(range(p), repeat=n):
        first = next((v for v in x if v), None)
        if first != 1:
            continue
        prod = 1
        for v in x:
            prod *= v
        if (sum(v ** n for v in x) - n * psi * prod) % p == 0:
            N += 1
    return N


def test_line_in_p2():
    F = make_ext_field(7)
    line = Polynomial(3, (((1, 0, 0), 1),), field=(7, 1))
    assert count_projective(line, F).N == 8


def test_fermat_cubic_psi0_f5():
    F = make_ext_field(5)
    assert count_projective(defining_polynomial(DworkFamily(3), 0, F), F).N == 6


@pytest.mark.parametrize("n,p,psi", [(3, 5, 2), (3, 7, 3), (4, 5, 2), (5, 7, 2)])
def test_dwork_against_naive_loops(n, p, psi):
    assert dwork_count(DworkFamily(n, psi, (p, 1))) == naive_projective(n, psi, p)


def test_golden_quintic_counts():
    assert dwork_count(DworkFamily(5, 2, (7, 1))) == 410
    assert dwork_count(DworkFamily(5, 3, (13, 1))) == 2355


@pytest.mark.parametrize("n,p,r,psi", [(3, 5, 1, 2), (5, 7, 1, 2), (3, 5, 2, 7), (4, 3, 2, 5)])
def test_cone_and_fast_paths_agree(n, p, r, psi):
    F = make_ext_field(p, r)
    poly = defining_polynomial(DworkFamily(n), psi, F)
    A = count_affine_cone(poly, F).N
    N = count_projective(poly, F).N
    assert N == (A - 1) // (F.q - 1) and (A - 1) % (F.q - 1) == 0
    fast = count_dwork_fast(n, psi, F)
    assert fast["affine"] == A and fast["projective"] == N


def test_threads_and_blocks_do_not_change_counts():
    F = make_ext_field(7)
    poly = defining_polynomial(DworkFamily(5), 3, F)
    ref = count_projective(poly, F).N
    assert count_projective(poly, F, threads=4).N == ref
    assert count_projective(poly, F, block=97).N == ref


def test_cap():
    F = make_ext_field(7)
    with pytest.raises(CapExceeded):
        count_projective(defining_polynomial(DworkFamily(5), 2, F), F, cap=1000)


def test_weighted_whole_space():
    for q in (5, 7):
        F = make_ext_field(q)
        zero = Polynomial(3, (), field=(q, 1))
        assert count_weighted_projective(zero, (1, 1, 1), F).N == q * q + q + 1
        assert count_weighted_projective(zero, (1, 2, 3), F).N == q * q + q + 1


@pytest.mark.parametrize("weights", [(1, 2, 3), (1, 1, 2), (1, 1, 1)])
def test_weighted_orbits_cross_check(weights):
    F = make_ext_field(5)
    d = {(1, 2, 3): 6, (1, 1, 2): 4, (1, 1, 1): 3}[weights]
    base = tuple(tuple(d // w if j == i else 0 for j in range(3)) for i, w in enumerate(weights))
    fam = FermatDeformation(tuple(d // w for w in weights), weights,
                            next(a for a in itertools.product(range(d + 1), repeat=3)
                                 if sum(x * w for x, w in zip(a, weights)) == d and all(a)),
                            2, (5, 1), Fraction(1), base)
    poly = defining_polynomial(fam)
    assert Fraction(count_weighted_projective(poly, weights, F).N) == \
        count_weighted_orbits_explicit(poly, weights, F)


def test_k3_fiber_over_f5():
    fam = k3_3678(1, (5, 1))
    F = make_ext_field(5)
    N = count_family(fam, F).N
    poly = defining_polynomial(fam)
    assert N == count_weighted_orbits_explicit(poly, fam.weights, F) == 32


def naive_torus(n, psi, p):
    N = 0
    for x in itertools.product(range(1, p), repeat=n - 1):
        prod = 1
        for v in x:
            prod = prod * v % p
        if (sum(x) + pow(prod, -1, p) - n * psi) % p == 0:
            N += 1
    return N


@pytest.mark.parametrize("n,p,psi", [(3, 5, 2), (4, 5, 2), (5, 7, 2), (5, 7, 3), (3, 2, 1)])
def test_torus_against_naive(n, p, psi):
    F = make_ext_field(p)
    N = count_torus(SingularMirror(n, psi, (p, 1)), F).N
    assert N == naive_torus(n, psi, p) == count_torus_fast(n, psi, F)


def test_torus_q_1296_tuples():
    assert count_torus(SingularMirror(5, 2, (7, 1))).N == 195


def test_torus_extension_field():
    F = make_ext_field(5, 2)
    assert count_torus(SingularMirror(3, 7, (5, 2)), F).N == count_torus_fast(3, 7, F)


def test_torus_empty_example():
    # n = 3 over F_2: x + y + 1/(xy) = 3 psi has the single torus point (1, 1) only when
    # 1 + 1 + 1 = psi, so psi = 0 gives no solutions
    assert count_torus(SingularMirror(3, 0, (2, 1))).N == 0


def test_mirror_closure_matches_enumeration():
    for n, p, r, psi in [(3, 5, 1, 2), (4, 5, 1, 3), (3, 3, 2, 5)]:
        F = make_ext_field(p, r)
        closure = count_projective(mirror_closure_polynomial(n, psi, F), F).N
        assert count_mirror_closure(n, psi, F) == closure == count_mirror_closure(n, psi, F, fast=False)


def naive_curve(kind, psi, p):
    e1, e2, e3 = {"A": (2, 3, 2), "B": (2, 4, 1)}[kind]
    c = pow(psi, 5, p)
    return sum(1 for x in range(p) for y in range(p)
               if (y ** 5 - x ** e1 * (1 - x) ** e2 * (x - c) ** e3) % p == 0)


@pytest.mark.parametrize("kind", ["A", "B"])
@pytest.mark.parametrize("p,psi", [(7, 2), (13, 3), (11, 2), (11, 3), (31, 2)])
def test_curves_against_naive(kind, p, psi):
    assert count_affine_curve(SuperellipticCurve(kind, psi, (p, 1))).N == naive_curve(kind, psi, p)


def test_curve_count_q_when_fifth_powers_biject():
    for p in (7, 13, 17):
        for psi in range(p):
            assert count_affine_curve(SuperellipticCurve("A", psi, (p, 1))).N == p


def test_count_table_p1_and_elliptic():
    # x + y + z = 0 in P^2 is a copy of P^1
    with pytest.warns(UserWarning):
        line = FermatDeformation((1, 1, 1), (1, 1, 1), (1, 0, 0), 0, (5, 1))
    tab = count_table(line, 5, 3)
    assert [r.N for r in tab.rows] == [6, 26, 126]
    assert count_table(DworkFamily(3, 0, (5, 1)), 5, 1).rows[0].N == 6


def test_count_table_truncates_at_cap():
    tab = count_table(DworkFamily(5, 2, (7, 1)), 7, 3, cap=10 ** 6)
    assert tab.truncated and len(tab.rows) == 1


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([5, 7, 11]), st.data())
def test_elliptic_weil_bound(p, data):
    psi = data.draw(st.integers(0, p - 1))
    if pow(psi, 3, p) == 1:
        return
    for r in (1, 2):
        F = make_ext_field(p, r)
        N = count_projective(defining_polynomial(DworkFamily(3), psi, F), F).N
        assert (N - F.q - 1) ** 2 <= 4 * F.q


@settings(max_examples=20, deadline=None)
@given(st.permutations([0, 1, 2, 3]))
def test_torus_count_symmetric(perm):
    # permuting torus coordinates maps solutions to solutions; the count is fixed
    n, p, psi = 5, 7, 3
    sols = set()
    for x in itertools.product(range(1, p), repeat=n - 1):
        prod = 1
        for v in x:
            prod = prod * v % p
        if (sum(x) + pow(prod, -1, p) - n * psi) % p == 0:
            sols.add(x)
    assert {tuple(x[i] for i in perm) for x in sols} == sols
    assert len(sols) == count_torus(SingularMirror(n, psi, (p, 1))).N
