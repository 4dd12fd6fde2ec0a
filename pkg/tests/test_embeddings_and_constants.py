import math
import random
from fractions import Fraction

import mpmath
import pytest

from sumdilates.dilate_const import h_constant, h_lower_witness
from sumdilates.embeddings import RealInterval, certified_roots
from sumdilates.numfield import DilateSystem, FieldError, quadratic_basis


def test_certified_roots_contain_true_roots():
    for poly in ([-2, 0, 1], [-2, 0, 0, 1], [1, 1, 1, 1, 1], [-1, -1, 0, 1]):
        E = certified_roots(poly)
        roots = mpmath.polyroots(list(reversed(poly)), maxsteps=200, extraprec=200)
        assert E.degree == len(poly) - 1
        for r in roots:
            assert sum(c.contains(complex(r), slack=1e-15) for c in E.roots) == 1
        for i, c in enumerate(E.roots):
            for j, o in enumerate(E.roots):
                if i < j:
                    assert c.disjoint(o)


def test_real_interval_ops():
    I = RealInterval(Fraction(1), Fraction(2))
    assert I.contains(Fraction(3, 2)) and not I.contains(3)
    assert I.width == 1 and I.mid == Fraction(3, 2)


def test_rational_constants_exact():
    rng = random.Random(5)
    for _ in range(30):
        ps = [rng.choice([x for x in range(-20, 21) if x]) for _ in range(rng.randint(1, 3))]
        q = rng.randint(1, 20)
        fr = [Fraction(p, q) for p in ps]
        res = h_constant(DilateSystem.parse("t", [str(x) for x in fr]))
        common = math.lcm(*(x.denominator for x in fr))
        assert res.exact_rational == common + sum(abs(x) * common for x in fr)


@pytest.mark.parametrize("field,dil,value", [
    ("t^2-2", ["t"], 3 + 2 * math.sqrt(2)),
    ("t^2-2", ["1/2*t"], 3 + 2 * math.sqrt(2)),
    ("t^2+1", ["t"], 4.0),
    ("t^3-2", ["t"], (1 + 2 ** (1 / 3)) ** 3),
    ("t^2-3", ["t", "1/2"], 4 * (1.5 + math.sqrt(3)) ** 2),
])
def test_surd_constants(field, dil, value):
    res = h_constant(DilateSystem.parse(field, dil), 1e-12)
    assert res.h.width < Fraction(1, 10**10)
    assert abs(float(res.h.mid) - value) < 1e-9


def test_proper_subfield_refused():
    with pytest.raises(FieldError):
        h_constant(DilateSystem.parse("t^2-2", ["3"]))


def test_lower_witness_below_constant():
    sys = DilateSystem.parse("t^2-2", ["t"])
    pts, ratio = h_lower_witness(sys, quadratic_basis(2), 8)
    assert len(pts) > 50 and 5.0 < ratio < 3 + 2 * math.sqrt(2) + 0.5
