from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from arithmirror.finite_field import make_ext_field
from arithmirror.zeta import (ZetaError, count_curves_AB, counts_from_numerator, curve_zeta,
                              fermat_cubic_counts, fit_weil_curve, newton_slopes,
                              series_of_rational, wan_congruence_check, zeta_series)


def test_p1_and_point_series():
    q = 5
    z = zeta_series([q ** r + 1 for r in range(1, 6)])
    assert z.coeffs == series_of_rational([1], [1, -1 - q, q], 5).coeffs
    assert zeta_series([1] * 5).coeffs == tuple([1] * 6)


def test_non_integral_series_flags_miscount():
    with pytest.raises(ZetaError):
        zeta_series([2, 3])


def test_genus_zero():
    assert fit_weil_curve([6, 26, 126], 5, 0) == [1]


def test_elliptic_fits_against_brute_force():
    assert fermat_cubic_counts(0, 5, 3) == [6, 36, 126]
    assert fit_weil_curve([6, 36, 126], 5, 1) == [1, 0, 5]
    assert fit_weil_curve(fermat_cubic_counts(2, 5, 3), 5, 1) == [1, 3, 5]
    assert fit_weil_curve(fermat_cubic_counts(0, 7, 3), 7, 1) == [1, 1, 7]


@pytest.mark.parametrize("p,psi", [(5, 0), (5, 2), (7, 0), (11, 3), (13, 2)])
def test_predicted_counts(p, psi):
    N = fermat_cubic_counts(psi, p, 3)
    a = p + 1 - N[0]
    P = fit_weil_curve(N[:1], p, 1)
    assert P == [1, -a, p]
    assert counts_from_numerator(P, p, 3) == N
    assert N[1] == p * p + 1 - (a * a - 2 * p)


def test_weil_bound_rejects():
    with pytest.raises(ZetaError):
        fit_weil_curve([5 + 1 + 5], 5, 1)


def test_singular_fiber_is_rejected():
    # psi = 2 over F_7 has psi^3 = 1: a nodal cubic, not a genus one curve
    with pytest.raises(ZetaError):
        curve_zeta(fermat_cubic_counts(2, 7, 3), 7, 1)


@pytest.mark.parametrize("p,psi", [(5, 0), (5, 2), (7, 0), (11, 3)])
def test_curve_zeta_round_trip_and_roots(p, psi):
    z = curve_zeta(fermat_cubic_counts(psi, p, 3), p, 1)
    assert z.series.coeffs == series_of_rational(z.numerator, z.denominator, 3).coeffs
    for alpha in z.roots:
        assert abs(abs(alpha) - p ** 0.5) < 1e-9


def test_slopes():
    assert newton_slopes([1, -3, 5], 5).expanded() == [0, 1]
    assert newton_slopes([1, 0, 5], 5).expanded() == [Fraction(1, 2)] * 2
    assert newton_slopes([1, -1], 7).expanded() == [0]
    sl = newton_slopes([1, 5, 25, 625], 5)
    assert sl.expanded() == [1, 1, 2] and sl.part().expanded() == []


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([3, 5, 7, 11]), st.integers(-20, 20))
def test_elliptic_slopes_sum_to_one(p, a):
    if a * a > 4 * p:
        return
    sl = newton_slopes([1, -a, p], p)
    assert sum(s * m for s, m in sl.slopes) == 1 and sl.total() == 2
    # ordinary curves have one unit root; supersingular ones none
    assert sl.part(Fraction(0), Fraction(1, 2)).total() == (1 if a % p else 0)
    assert sl.part().total() == (1 if a % p else 2)


@pytest.mark.parametrize("n,p,base_r,psi", [(3, 5, 1, 2), (3, 5, 1, 3), (5, 7, 1, 2), (5, 7, 1, 3),
                                            (4, 5, 2, 0)])
def test_wan_congruence(n, p, base_r, psi):
    rep = wan_congruence_check(n, psi, p, 2, base_r)
    assert rep.passed


def test_wan_f25_generator():
    F = make_ext_field(5, 2)
    assert wan_congruence_check(4, F.generator, 5, 2, 2).passed


def test_wan_rejects_singular():
    with pytest.raises(ZetaError):
        wan_congruence_check(5, 1, 7, 1)


def test_curves_ab():
    for p in (7, 13, 17):
        pair = count_curves_AB(2, p)
        assert pair.A.N == pair.B.N == p
    pair = count_curves_AB(2, 11)
    assert (pair.A.N, pair.B.N) == (3, 23)
    assert count_curves_AB(0, 11).degenerate
