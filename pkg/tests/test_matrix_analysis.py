import random
from fractions import Fraction

import pytest

from sumdilates.acceptance import SEC11
from sumdilates.matrix_analysis import (
    Decision,
    MatrixFamily,
    RefusalError,
    analyze,
    check_coprime_witness,
    check_witness,
    companion,
    coprime,
    det_form,
    h_matrices,
    irreducible,
    pre_commuting,
    recover_dilates,
)

SQRT2 = MatrixFamily.of([[[1, 0], [0, 1]], companion([-2, 0, 1])])


def test_companion_shape():
    assert companion([-2, 0, 1]) == [[0, 2], [1, 0]]


def test_det_form_sqrt2():
    G = det_form(SQRT2)
    assert str(G) == "x0^2 - 2*x1^2"


def test_sec11_family():
    fam = MatrixFamily.of(SEC11)
    assert det_form(fam).is_zero()
    assert pre_commuting(fam) is Decision.FALSE
    assert irreducible(fam).decision is Decision.TRUE
    res = coprime(fam)
    assert res.coprime is True and res.certified is False
    with pytest.raises(RefusalError):
        h_matrices(fam)


def test_companion_family():
    assert pre_commuting(SQRT2) is Decision.TRUE
    assert irreducible(SQRT2).decision is Decision.TRUE
    h = h_matrices(SQRT2)
    assert abs(float(h.h.mid) - 5.828427124746190) < 1e-12
    res = coprime(SQRT2)
    assert res.coprime and res.certified


def test_scaled_family_not_coprime():
    fam = MatrixFamily.of([[[2, 0], [0, 2]], [[0, 4], [2, 0]]])
    res = coprime(fam)
    assert res.coprime is False
    P, Q = res.witness
    assert check_coprime_witness(fam, P, Q)


def test_reducible_family_witness():
    fam = MatrixFamily.of([[[1, 0], [0, 1]], [[1, 0], [0, 2]]])
    res = irreducible(fam)
    assert res.decision is Decision.FALSE
    U, V = res.witness
    assert check_witness(fam, U, V)


def test_rational_dimension_one():
    fam = MatrixFamily.of([[[1]], [[2]]])
    assert float(h_matrices(fam).h.mid) == 3.0


def test_recovery_identity_random_vectors():
    rng = random.Random(1)
    for fam in (SQRT2, MatrixFamily.of([[[1, 0, 0], [0, 1, 0], [0, 0, 1]], companion([-2, 0, 0, 1])])):
        rec = recover_dilates(fam)
        d = fam.d
        vecs = [[Fraction(rng.randint(-999, 999), rng.randint(1, 50)) for _ in range(d)] for _ in range(100)]
        assert rec.verify(fam, vecs)


def test_cube_root_constant():
    fam = MatrixFamily.of([[[1, 0, 0], [0, 1, 0], [0, 0, 1]], companion([-2, 0, 0, 1])])
    assert abs(float(h_matrices(fam).h.mid) - 11.5419663) < 1e-6


def test_analyze_report_json():
    rep = analyze(SQRT2)
    js = rep.to_json()
    assert js["pre_commuting"] == "true" and js["coprime"] is True and js["field"] == "t^2 - 2"
