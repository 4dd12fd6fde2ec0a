from fractions import Fraction

import numpy as np
import pytest

from sumdilates import lattice_density as ldm
from sumdilates.acceptance import flag_stability, lattice_density_suite, regularity_instances
from sumdilates.exactalg.lattice import hnf, standard_lattice
from sumdilates.numfield import DilateSystem, quadratic_basis, rational_basis

F3 = ldm.Flag.of([hnf([[3]]), hnf([[1]])])
A12 = ldm.PeriodicSet.of(12, [0, 1, 3, 9])


def test_worked_example():
    S = ldm.lattice_density(A12, F3)
    assert S.heights == (Fraction(3, 4), Fraction(1, 4), 0)
    assert ldm.volume(S) == Fraction(1, 3)
    assert [ldm.projection(S, l) for l in (1, 2)] == [Fraction(3, 4), Fraction(2, 3)]
    assert [ldm.projection_direct(A12, F3, l) for l in (1, 2)] == [Fraction(3, 4), Fraction(2, 3)]


def test_witness_search():
    assert ldm.ld_contains(A12, F3, (Fraction(3, 4), Fraction(1, 3)))
    assert not ldm.ld_contains(A12, F3, (Fraction(3, 4), Fraction(2, 3)))
    pt = (Fraction(1, 4), Fraction(2, 3))
    assert ldm.check_witness(A12, F3, pt, ldm.ld_witness(A12, F3, pt))


def test_periodic_sumsets():
    A1, A2 = ldm.PeriodicSet.of(6, [0, 3]), ldm.PeriodicSet.of(6, [0, 4])
    s = ldm.periodic_sumset([A1, A2], [[[2]], [[3]]])
    assert s.same_set(ldm.PeriodicSet.of(6, [0]))
    t = ldm.periodic_sumset([A2, A1], [[[2]], [[3]]])
    assert t.same_set(ldm.PeriodicSet.of(6, [0, 2, 3, 5]))
    assert ldm.density(t, standard_lattice(1)) == Fraction(2, 3)


def test_compression():
    arr = np.array([[1, 3, 2], [0, 5, 5]], dtype=object)
    out = ldm.compress_last_axis(arr)
    assert out.tolist() == [[3, 2, 1], [5, 5, 0]]


def test_property_suite_small():
    fails = lattice_density_suite(40, seed=7)
    assert not any(fails.values()), fails


def test_local_density_identities():
    A = [(0,), (3,)]
    body = ldm.local_ld(A, ldm.Box((0,), 6), F3)
    assert body == ldm.lattice_density(ldm.PeriodicSet.of(6, [0, 3]), F3)
    assert ldm.volume(body) == ldm.local_volume_direct(A, ldm.Box((0,), 6), F3)
    with pytest.raises(ldm.TilingError):
        ldm.local_ld(A, ldm.Box((0,), 4), F3)


def test_ideal_flags():
    sys = DilateSystem.parse("t^2-2", ["1/2*t"])
    fl = ldm.flags_from_ideals(sys, quadratic_basis(2), [1])
    assert fl.F.lattices == (hnf([[1, 0], [0, 2]]), hnf([[1, 0], [0, 1]]))
    assert fl.G.lattices == (hnf([[2, 0], [0, 1]]), hnf([[1, 0], [0, 1]]))
    q = ldm.flags_from_ideals(DilateSystem.parse("t", ["3/2"]), rational_basis(), [3])
    assert q.F.lattices[0] == hnf([[8]]) and q.G.lattices[0] == hnf([[8]])


def test_flag_stability_small():
    assert flag_stability(10, 2, seed=3) == []


def test_regularity_guarantees():
    for name, A, N, M, family in regularity_instances(4, seed=5):
        res = ldm.regular_decomposition(A, N, family, M, Fraction(1, 5), 1)
        assert ldm.check_decomposition(res, A, family, M, Fraction(1, 5), 1) == (True, True)


def test_regularity_divisibility_refusal():
    fam = lambda n: ldm.Flag.of([hnf([[3 ** n[0]]]), hnf([[1]])])
    with pytest.raises(ldm.RegularityError):
        ldm.regular_decomposition([(0,), (1,)], 8, fam, 2, Fraction(1, 5), 1)
