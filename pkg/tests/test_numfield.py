import random

import pytest

from sumdilates.acceptance import random_dilate_system
from sumdilates.numfield import (
    DilateSystem,
    FieldError,
    NumberField,
    default_basis,
    denominator_ideal,
    denominator_norm,
    dilate_matrices,
    generates_field,
    ideal_intersection,
    ideal_inverse,
    ideal_product,
    quadratic_basis,
    rational_basis,
)


def test_field_arithmetic():
    K = NumberField.parse("t^2-2")
    t = K.generator()
    assert (t * t).coeffs == K.rational(2).coeffs
    x = K.parse_element("1+t")
    assert (x * x.inverse()).coeffs == K.one().coeffs
    assert x.norm() == -1 and x.trace() == 2


def test_reducible_field_rejected():
    with pytest.raises(FieldError):
        NumberField.parse("t^2-4")


def test_zero_dilate_rejected():
    with pytest.raises(FieldError):
        DilateSystem.parse("t^2-2", ["0"])


def test_generation():
    assert generates_field(DilateSystem.parse("t^2-2", ["1/2*t"]))
    assert not generates_field(DilateSystem.parse("t^2-2", ["3"]))


def test_quadratic_catalog_basis():
    B = quadratic_basis(5)
    assert B.is_integral(B.field.parse_element("1/2+1/2*t"))
    assert not B.is_integral(B.field.parse_element("1/2*t"))
    with pytest.raises(FieldError):
        quadratic_basis(8)


def test_default_basis_choice():
    assert default_basis(NumberField.parse("t")).provenance == "catalog"
    assert default_basis(NumberField.parse("t^2-5")).provenance == "catalog"
    assert default_basis(NumberField.parse("t^3-2")).provenance == "monogenic"


@pytest.mark.parametrize("p,q", [(3, 2), (-5, 7), (1, 9), (12, 1)])
def test_rational_denominator(p, q):
    sys = DilateSystem.parse("t", [f"{p}/{q}"])
    assert denominator_norm(sys) == q
    assert denominator_ideal(sys, rational_basis()).norm() == q


def test_inverse_sqrt2_denominator():
    sys = DilateSystem.parse("t^2-2", ["1/2*t"])
    B = quadratic_basis(2)
    D = denominator_ideal(sys, B)
    assert D.norm() == 2 == denominator_norm(sys)
    dd, mats = dilate_matrices(sys, B)
    assert mats[0] == [[2, 0], [0, 1]] and mats[1] == [[0, 1], [1, 0]]


def test_denominator_norm_matches_index_random():
    rng = random.Random(11)
    for _ in range(40):
        sys, basis = random_dilate_system(rng)
        assert denominator_norm(sys) == denominator_ideal(sys, basis).norm()


def test_ideal_algebra():
    B = quadratic_basis(2)
    K = B.field
    sys = DilateSystem.parse("t^2-2", ["1/2*t"])
    D = denominator_ideal(sys, B)
    inv = ideal_inverse(D, B)
    one = ideal_product(D, inv, B)
    assert one.norm() == 1
    sq = ideal_product(D, D, B)
    assert sq.norm() == 4
    assert ideal_intersection(D, sq).norm() == 4
    assert K.degree == 2
