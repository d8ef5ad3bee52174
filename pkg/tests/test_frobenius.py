from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from arithmirror.families import DworkFamily, k3_3678
from arithmirror.frobenius import (FrobeniusError, HypergeometricData, a0_zeta_series,
                                   change_of_basis, dwork_hypergeometric, dwork_log_blocks,
                                   extract_hypergeometric, fundamental_period, indicial_roots,
                                   is_unit_lower_triangular, log_solutions, period_variable,
                                   unnormalized_blocks_direct)
from arithmirror.picard_fuchs import dwork_theta_operator
from arithmirror.ratfun import Poly, ThetaOperator, TruncSeries, ZetaPoly, theta_apply


def test_period_coefficients():
    w = fundamental_period(DworkFamily(5), 30)
    assert w[0] == 1 and w[1] == 120 and w[2] == 113400
    assert all(w[m] == factorial(5 * m) // factorial(m) ** 5 for m in range(31))
    assert fundamental_period(DworkFamily(3), 3)[1] == 6


def test_k3_period_variable_and_coefficients():
    fam = k3_3678()
    pv = period_variable(fam)
    assert pv.step == 12
    w = fundamental_period(fam, 4)
    for t in range(5):
        assert w[t] == factorial(12 * t) // (factorial(t) * factorial(3 * t) * factorial(4 * t) ** 2)


def test_indicial_roots():
    assert indicial_roots(dwork_theta_operator(3)) == [0, 0]
    assert indicial_roots(dwork_theta_operator(5)) == [0, 0, 0, 0]
    assert indicial_roots(ThetaOperator(((0, Poly([-1, 1])),), "z")) == [1]


def test_g1_first_coefficient():
    g = dwork_log_blocks(5, 1, 3)
    assert g[0][1] == 120 and g[1][1] == 770


@pytest.mark.parametrize("n,imax", [(5, 3), (3, 1), (4, 2)])
def test_log_solutions_are_annihilated(n, imax):
    L = dwork_theta_operator(n)
    sols = log_solutions(DworkFamily(n), imax, 30)
    assert sols[0].blocks[0] == fundamental_period(DworkFamily(n), 30)
    for s in sols:
        out = theta_apply(L, s.series())
        assert all(c == 0 for b in out.blocks for c in b.coeffs[:27])


def test_log_solution_structure():
    s1 = log_solutions(DworkFamily(5), 1, 5)[1].series()
    w0 = fundamental_period(DworkFamily(5), 5)
    assert s1.blocks[1].coeffs == w0.coeffs           # coefficient of log
    assert len(log_solutions(DworkFamily(5), 3, 5)) == 4


def test_too_many_log_solutions_rejected():
    with pytest.raises(FrobeniusError):
        log_solutions(DworkFamily(3), 2, 5)


def test_hypergeometric_extraction():
    q = extract_hypergeometric(fundamental_period(DworkFamily(5), 20))
    assert q.upper == tuple(Fraction(i, 5) for i in range(1, 5))
    assert q.lower == (1, 1, 1) and q.scale == 5 ** 5
    assert q == dwork_hypergeometric(5)
    c = extract_hypergeometric(fundamental_period(DworkFamily(3), 20))
    assert (c.upper, c.lower) == ((Fraction(1, 3), Fraction(2, 3)), (1,))
    geo = extract_hypergeometric(TruncSeries(tuple([Fraction(1)] * 15), 15, "z"))
    assert geo.upper == (1,) and geo.lower == () and geo.scale == 1


def test_cubic_pochhammer_identity():
    w = fundamental_period(DworkFamily(3), 15)
    f = HypergeometricData((Fraction(1, 3), Fraction(2, 3)), (Fraction(1),), Fraction(1)).series(15)
    for k in range(16):
        assert w[k] == f[k] * 27 ** k == Fraction(factorial(3 * k), factorial(k) ** 3)


fracs = st.fractions(min_value=Fraction(1, 6), max_value=3, max_denominator=6)


@settings(max_examples=30, deadline=None)
@given(st.lists(fracs, min_size=1, max_size=3), st.lists(fracs, min_size=0, max_size=2),
       st.sampled_from([Fraction(1), Fraction(-2), Fraction(27), Fraction(1, 4)]))
def test_hypergeometric_round_trip(upper, lower, scale):
    upper, lower = sorted(upper), sorted(lower)
    # keep the parameter set in reduced form so the answer is unique
    if set(upper) & set(lower + [1]) or 1 in lower:
        return
    h = HypergeometricData(tuple(upper), tuple(lower), scale)
    got = extract_hypergeometric(h.series(24))
    assert (got.upper, got.lower, got.scale) == (tuple(upper), tuple(lower), scale)


def test_a0_series():
    a = a0_zeta_series(5, 4)
    assert a[0] == ZetaPoly(1) and a[1] == ZetaPoly(0)
    assert a[2] == ZetaPoly.symbol(2) * 10


def test_two_unnormalized_routes_agree():
    via_norm = dwork_log_blocks(5, 4, 8, normalized=False)
    direct = unnormalized_blocks_direct(5, 4, 8)
    assert via_norm == direct


def test_change_of_basis_matrix():
    T = change_of_basis(5, 4, 12)
    assert is_unit_lower_triangular(T)
    Z2, Z3, Z4 = (ZetaPoly.symbol(j) for j in (2, 3, 4))
    assert T[2][0] == Z2 * 20
    assert T[3][0] == Z3 * -240 and T[3][1] == Z2 * 60
    assert T[4][0] == Z4 * 6720 and T[4][1] == Z3 * -960 and T[4][2] == Z2 * 120
