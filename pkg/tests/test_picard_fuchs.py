from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from arithmirror.families import DworkFamily, FermatDeformation
from arithmirror.frobenius import fundamental_period
from arithmirror.picard_fuchs import (DifferentialOperator, MonomialTerm, change_variable,
                                      cubic_corrected_psi_operator, cubic_printed_psi_operator,
                                      derive_picard_fuchs, dwork_theta_operator, falling,
                                      griffiths_reduce, invariant_basis_relations,
                                      psi_derivative, pf_system, quintic_lambda_operator,
                                      same_operator, theta_form_in_psi, to_theta_laurent)
from arithmirror.ratfun import Poly, RatFun, ThetaOperator, theta_apply


def quintic_reference():
    t = Poly.x()
    lo = Poly([1])
    for i in range(1, 5):
        lo = lo * (t * 5 + i)
    return ThetaOperator(((0, t ** 4), (1, lo * -5)), "lambda")


def test_quintic_lambda_form():
    op = quintic_lambda_operator()
    assert op == quintic_reference()
    assert op.to_text() == "t^4 - 5*l*(5t+1)*(5t+2)*(5t+3)*(5t+4)"


def test_quintic_order_four_and_cubic_order_two():
    assert derive_picard_fuchs(DworkFamily(5)).operator.order == 4
    assert derive_picard_fuchs(DworkFamily(3)).operator.order == 2


def test_cubic_psi_and_z_forms():
    op = derive_picard_fuchs(DworkFamily(3)).operator
    assert same_operator(op, cubic_corrected_psi_operator())
    t = Poly.x()
    lau = to_theta_laurent(derive_picard_fuchs(DworkFamily(3), prefactor=RatFun.x()).operator)
    ref = ThetaOperator(((0, t * t), (1, -(t + Fraction(1, 3)) * (t + Fraction(2, 3)))), "z")
    # the (t + 1/3)(t + 2/3) form holds in z = psi^-3; z = 1/(3 psi)^3 carries 27
    assert change_variable(lau, 3, Fraction(1), "z") == ref
    assert change_variable(lau, 3, Fraction(1, 27), "z") == ThetaOperator(
        ((0, t * t), (1, ref.parts[1][1] * 27)), "z")


def test_printed_cubic_psi_form_differs():
    # the printed psi-form is not a left multiple of the derived operator
    op = derive_picard_fuchs(DworkFamily(3)).operator
    assert not same_operator(op, cubic_printed_psi_operator())


@pytest.mark.parametrize("n", [3, 4, 5])
def test_dwork_operator_annihilates_period(n):
    op = dwork_theta_operator(n)
    w0 = fundamental_period(DworkFamily(n), 25)
    assert theta_apply(op, w0).is_zero()


def test_psi_derivative_of_holomorphic_form():
    S = pf_system(DworkFamily(5))
    d = psi_derivative(MonomialTerm(((0,) * 5, 1), RatFun(1)), S)
    # Q = sum x^5 - 5 psi x^eps, so d/dpsi (1/Q) = 5 x^eps / Q^2
    assert d == {((1,) * 5, 2): RatFun(5)}
    d2 = psi_derivative(d, S)
    assert {k for _, k in d2} == {3}


def test_cubic_derivative_chain():
    # I_n = [x^{(n-1) eps}, n]; d/dpsi I_n = 3 n I_{n+1}
    S = pf_system(DworkFamily(3))
    for n in range(1, 5):
        d = psi_derivative({((n - 1,) * 3, n): RatFun(1)}, S)
        assert d == {((n,) * 3, n + 1): RatFun(3 * n)}


def test_griffiths_quintic_move():
    # x_1^5 / Q^2 = psi x^eps / Q^2 + (1/5) / Q
    out = griffiths_reduce(MonomialTerm(((5, 0, 0, 0, 0), 2), RatFun(1)), DworkFamily(5))
    assert {t.label: t.coeff for t in out} == {((0,) * 5, 1): RatFun(Fraction(1, 5)),
                                                ((1,) * 5, 2): RatFun.x()}


def test_griffiths_minimal_term_unchanged():
    out = griffiths_reduce(MonomialTerm(((0,) * 5, 1), RatFun(1)), DworkFamily(5))
    assert out == [MonomialTerm(((0,) * 5, 1), RatFun(1))]


def test_griffiths_cubic_relation():
    # 3 x_1^3 x_2^3 / Q^3 is x_2^3 d/dx_1 Q /Q^3 minus the psi part, reducing to pole order 2
    fam = DworkFamily(3)
    out = griffiths_reduce(MonomialTerm(((3, 3, 0), 3), RatFun(1)), fam, u0=(0, 0, 0))
    assert all(k <= 3 for (_, k), _ in ((t.label, t.coeff) for t in out))
    assert ((3, 3, 0), 3) not in {t.label for t in out}


def test_invariant_basis_matrix():
    M = invariant_basis_relations(5)
    assert M[1] == [Fraction(-1, 5), 1, 0, 0]
    assert M[3] == [Fraction(-1, 125), Fraction(7, 25), Fraction(-6, 5), 1]
    for i, row in enumerate(M):
        assert row[i] == 1 and all(x == 0 for x in row[i + 1:])


def test_falling_factorial():
    t = Poly.x()
    assert falling(3) == t * (t - 1) * (t - 2)


def test_theta_form_in_psi_quintic():
    op = theta_form_in_psi(derive_picard_fuchs(DworkFamily(5), prefactor=RatFun.x()).operator)
    assert op.order() == 4


@settings(max_examples=6, deadline=None)
@given(st.sampled_from([(3, (1, 1, 1)), (4, (1, 1, 1, 1))]), st.integers(-3, 3).filter(bool))
def test_scaled_deformation_kills_period(case, c):
    # rescaling the deformation coefficient rescales the variable only
    n, a = case
    fam = FermatDeformation((n,) * n, (1,) * n, a, None, None, Fraction(c))
    res = derive_picard_fuchs(fam, prefactor=RatFun.x())
    from arithmirror.frobenius import period_variable
    pv = period_variable(fam)
    zc = Fraction((-1) ** pv.step) / pv.coefficient ** pv.step     # z = zc * psi^(-step)
    op = change_variable(to_theta_laurent(res.operator), pv.step, zc, "z")
    w0 = fundamental_period(fam, 12)
    assert theta_apply(op, w0).is_zero()
