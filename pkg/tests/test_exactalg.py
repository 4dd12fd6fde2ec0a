import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from sumdilates.exactalg import linalg as la
from sumdilates.exactalg.factor import factor_rational, is_irreducible
from sumdilates.exactalg.lattice import (
    coset_reps,
    hnf,
    is_sublattice,
    lattice_intersect,
    lattice_sum,
    quotient_invariants,
    smith,
    standard_lattice,
)
from sumdilates.exactalg.poly import MultiPoly, bareiss_det, format_upoly, parse_upoly, resultant

small = st.integers(-9, 9)
matrices = st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n))


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_det_matches_sympy(m):
    assert la.det(m) == sympy.Matrix(m).det()


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_inverse_roundtrip(m):
    if la.det(m) == 0:
        with pytest.raises(Exception):
            la.inverse(m)
        return
    assert la.mat_mul(m, la.inverse(m)) == la.identity(len(m))


def test_rank_nullspace():
    m = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    assert la.rank(m) == 2
    for v in la.nullspace(m):
        assert la.mat_vec(m, v) == [0, 0, 0]


def test_charpoly_cayley_hamilton():
    m = [[0, 2, 1], [1, 0, 0], [3, 1, -1]]
    cp = la.charpoly(m)
    assert la.is_zero(la.mat_pow_combination(cp, m))


def test_parse_format_roundtrip():
    p = parse_upoly("t^3 - 2*t + 1/2")
    assert p == [Fraction(1, 2), -2, 0, 1]
    assert parse_upoly(format_upoly(p)) == p


def test_resultant_matches_sympy():
    rng = random.Random(3)
    x, y = sympy.symbols("x y")
    for _ in range(15):
        f = [rng.randint(-4, 4) for _ in range(rng.randint(2, 4))] + [1]
        g = [rng.randint(-4, 4) for _ in range(rng.randint(1, 3))] + [rng.randint(1, 3)]
        F = MultiPoly.from_univariate(("x", "y"), "y", f)
        G = MultiPoly(("x", "y"), {(i, j): c for j, c in enumerate(g) for i in [0]}) + MultiPoly.var(("x", "y"), "x")
        expected = sympy.resultant(sum(c * y**i for i, c in enumerate(f)), sum(c * y**j for j, c in enumerate(g)) + x, y)
        got = resultant(F, G, "y")
        assert sympy.expand(sympy.sympify(str(got).replace("^", "**")) - expected) == 0


def test_bareiss_det_constant_matrix():
    V = ("x",)
    m = [[MultiPoly.constant(V, a) for a in row] for row in [[2, 1], [7, 4]]]
    assert bareiss_det(m) == MultiPoly.constant(V, 1)


@pytest.mark.parametrize("poly,irr", [([-2, 0, 1], True), ([-4, 0, 1], False), ([-2, 0, 0, 1], True), ([1, 0, 1, 0, 1], False), ([1, 1, 1, 1, 1], True)])
def test_irreducibility(poly, irr):
    assert is_irreducible(poly) is irr


def test_factor_rational_product():
    poly = [2, -3, 0, -1, 1]  # (t^2 - t - 2)(t^2 - 1) style check against sympy
    t = sympy.symbols("t")
    expected = sympy.factor_list(sum(c * t**i for i, c in enumerate(poly)))[1]
    got = factor_rational(poly)
    assert sorted(m for _, m in got) == sorted(m for _, m in expected)
    assert len(got) == len(expected)


def test_hnf_canonical_and_index():
    a = hnf([[2, 0], [0, 3]])
    b = hnf([[2, 3], [0, 3], [4, 6]])
    assert a == b
    assert a.index == 6
    assert len(coset_reps(standard_lattice(2), a)) == 6


def test_lattice_operations():
    a, b = hnf([[2, 0], [0, 1]]), hnf([[1, 0], [0, 3]])
    meet, join = lattice_intersect(a, b), lattice_sum(a, b)
    assert meet.index == 6 and join.index == 1
    assert is_sublattice(meet, a) and is_sublattice(meet, b)
    assert quotient_invariants(standard_lattice(2), meet) == (1, 6)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=2, max_size=3))
def test_smith_decomposition(rows):
    sd = smith(rows)
    U, V = [list(r) for r in sd.U], [list(r) for r in sd.V]
    prod_ = la.mat_mul(la.mat_mul(U, rows), V)
    for i, row in enumerate(prod_):
        for j, x in enumerate(row):
            assert x == (sd.diag[i] if i == j and i < len(sd.diag) else 0)
    nz = [d for d in sd.diag if d]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert abs(la.det(U)) == 1 and abs(la.det(V)) == 1
