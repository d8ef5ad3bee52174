import cmath
import itertools
from fractions import Fraction

import pytest

from arithmirror.families import (DworkFamily, FamilyError, FermatDeformation, SingularMirror,
                                  SuperellipticCurve, class_total, defining_polynomial,
                                  family_from_json, family_to_json, is_singular_fiber,
                                  jacobian_basis, k3_3678, monomial_classes, pole_order)


def test_dwork_singular_fibers():
    assert is_singular_fiber(DworkFamily(5), 1)
    assert is_singular_fiber(DworkFamily(3), cmath.exp(2j * cmath.pi / 3))
    assert not is_singular_fiber(DworkFamily(5, 2, (7, 1)))
    assert is_singular_fiber(DworkFamily(5, 0, (5, 1)))     # p | n


def test_symbolic_cubic_polynomial():
    assert str(defining_polynomial(DworkFamily(3))) == "x1^3 + x2^3 + x3^3 - 3*psi*x1*x2*x3"


def test_quintic_deformation_coefficient_mod_7():
    poly = defining_polynomial(DworkFamily(5, 2, (7, 1)))
    assert dict(poly.terms)[(1, 1, 1, 1, 1)] == 4


def test_fermat_deformation_specializes_to_dwork():
    n = 4
    fd = FermatDeformation((n,) * n, (1,) * n, (1,) * n, 3, (7, 1), Fraction(-n))
    assert defining_polynomial(fd) == defining_polynomial(DworkFamily(n, 3, (7, 1)))


def test_deformation_must_be_homogeneous():
    with pytest.raises(FamilyError):
        FermatDeformation((3, 3, 3), (1, 1, 1), (2, 2, 0), 0)


def test_non_calabi_yau_warns():
    with pytest.warns(UserWarning):
        FermatDeformation((4, 4, 4), (1, 1, 1), (2, 1, 1), 0)


def test_k3_deformation_is_repaired():
    with pytest.warns(UserWarning):
        fam = k3_3678()
    assert fam.deformation == (1, 1, 1, 1)
    assert fam.degree == 24
    assert sum(a * w for a, w in zip(fam.deformation, fam.weights)) == 24


def test_k3_keeps_valid_exponents():
    assert k3_3678(printed=(1, 1, 1, 1)).deformation == (1, 1, 1, 1)


def test_jacobian_basis_size():
    assert len(jacobian_basis(5)) == 204
    assert all(sum(v) % 5 == 0 for v in jacobian_basis(5))


def test_monomial_classes():
    classes = monomial_classes(5)
    sizes = [(c.representative, c.gamma, c.solutions) for c in classes]
    assert sizes[0] == ((0, 0, 0, 0, 0), 1, 4)
    # the last representative has an exponent 4 = n - 1 and meets no Jacobian monomial
    assert classes[-1].solutions == 0
    for c in classes:
        assert isinstance(pole_order(c.representative, 5), int)
    assert class_total(classes[:5]) == class_total(classes)


def test_class_total_is_204():
    assert class_total(monomial_classes(5)) == 204 == len(jacobian_basis(5))


def test_pole_order_rejects_nonintegral():
    with pytest.raises(FamilyError):
        pole_order((1, 0, 0, 0, 0), 5)


@pytest.mark.parametrize("fam", [
    DworkFamily(5, 2, (7, 1)), DworkFamily(3, Fraction(1, 2)), SingularMirror(4, 3, (5, 2)),
    SuperellipticCurve("B", 2, (11, 1)),
    FermatDeformation((3, 3, 3), (1, 1, 1), (1, 1, 1), 2, (5, 1), Fraction(-3)),
])
def test_json_round_trip(fam):
    assert family_from_json(family_to_json(fam)) == fam


def test_curve_singular_when_psi5_in_0_1():
    assert is_singular_fiber(SuperellipticCurve("A"), 0)
    assert is_singular_fiber(SuperellipticCurve("A", 1, (11, 1)))
    assert not is_singular_fiber(SuperellipticCurve("A", 2, (11, 1)))


def test_weighted_jacobian_criterion():
    fam = FermatDeformation((3, 3, 3), (1, 1, 1), (1, 1, 1), 1, (7, 1), Fraction(-3))
    assert is_singular_fiber(fam)
    assert is_singular_fiber(fam, 2)          # 2^3 = 1 in F_7
    assert not is_singular_fiber(fam, 3)
