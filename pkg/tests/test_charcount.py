import pytest
from hypothesis import given, settings, strategies as st

from arithmirror.charcount import (PreconditionError, calibrate_cubic_constant, cubic_count,
                                   cubic_nonzero_bruteforce, quintic_count, quintic_lambda,
                                   semiperiod_count, truncated_hypergeometric)
from arithmirror.counting import count_affine_cone, dwork_count
from arithmirror.families import DworkFamily, defining_polynomial
from arithmirror.finite_field import make_ext_field

QUINTIC_PAIRS = [(7, 2), (7, 3), (13, 3), (13, 5), (17, 2)]


@pytest.mark.parametrize("p,psi", QUINTIC_PAIRS)
def test_quintic_formula_equals_brute_force(p, psi):
    r = quintic_count(psi, p, 5)
    assert r.count == dwork_count(DworkFamily(5, psi, (p, 1)))


def test_golden_quintic():
    assert quintic_count(2, 7, 5).count == 410
    assert quintic_count(3, 13, 5).count == 2355


@pytest.mark.parametrize("p,psi", QUINTIC_PAIRS)
def test_two_displayed_forms_agree(p, psi):
    assert quintic_count(psi, p, 5, "beta").value == quintic_count(psi, p, 5, "dual").value


@pytest.mark.parametrize("p,psi", QUINTIC_PAIRS)
def test_mod_p_truncation(p, psi):
    lam = quintic_lambda(psi, p)
    assert quintic_count(psi, p, 5).value.value % p == truncated_hypergeometric(p, lam)


def test_truncation_examples():
    assert truncated_hypergeometric(7, 0) == 1
    for lam in range(7):
        assert truncated_hypergeometric(7, lam) == (1 + lam) % 7


def test_quintic_depends_only_on_lambda():
    # psi and psi' with the same fifth power give the same lambda, hence the same value
    p = 17
    seen = {}
    for psi in range(1, p):
        if pow(psi, 5, p) == 1:
            continue
        lam = quintic_lambda(psi, p)
        v = quintic_count(psi, p, 4).value
        assert seen.setdefault(lam, v) == v


@settings(max_examples=15, deadline=None)
@given(st.sampled_from([7, 13, 17]), st.data(), st.integers(2, 5))
def test_quintic_precision_coherence(p, data, N):
    psi = data.draw(st.integers(1, p - 1))
    if pow(psi, 5, p) == 1:
        return
    hi = quintic_count(psi, p, N).value.value
    lo = quintic_count(psi, p, N - 1).value.value
    assert hi % p ** (N - 1) == lo


def test_quintic_preconditions():
    for p, psi in [(11, 2), (5, 2), (7, 0), (7, 1)]:
        with pytest.raises(PreconditionError):
            quintic_count(psi, p)


def test_cubic_calibration_is_unique():
    assert calibrate_cubic_constant(5, 2) == "over_p"


@pytest.mark.parametrize("p,psi", [(5, 2), (5, 3), (5, 4), (11, 2), (11, 3), (17, 2), (17, 3)])
def test_cubic_matches_brute_force(p, psi):
    assert cubic_count(psi, p).count == cubic_nonzero_bruteforce(psi, p)


def test_cubic_golden():
    assert cubic_nonzero_bruteforce(2, 5) == 24
    assert cubic_nonzero_bruteforce(3, 11) == 120
    assert cubic_nonzero_bruteforce(2, 17) == 288


def test_cubic_preconditions():
    for p, psi in [(7, 2), (5, 1), (5, 0)]:
        with pytest.raises(PreconditionError):
            cubic_count(psi, p)


def _cone(p, psi):
    F = make_ext_field(p)
    return count_affine_cone(defining_polynomial(DworkFamily(5), psi, F), F).N


@pytest.mark.parametrize("p,psi", [(7, 2), (7, 3), (13, 2), (13, 3)])
def test_semiperiod_mod_p(p, psi):
    A = _cone(p, psi)
    r = semiperiod_count(psi, p, 5, brute=A)
    assert (r.value.value - A) % p == 0
    assert r.value.value % p == truncated_hypergeometric(p, quintic_lambda(psi, p))


def test_semiperiod_residual_is_reported():
    r = semiperiod_count(2, 7, 5, brute=_cone(7, 2))
    # frozen experiment: the mod 7^5 residual is nonzero, divisible by 7^3 only
    assert r.extra["residual"] == "14749"
    assert r.extra["residual_valuation"] == 3


def test_semiperiod_precision_cap():
    with pytest.raises(PreconditionError):
        semiperiod_count(2, 7, 6)
