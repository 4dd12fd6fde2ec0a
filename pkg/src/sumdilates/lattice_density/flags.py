"""Flags of ideal lattices attached to a dilate system."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..exactalg.lattice import IntegerLattice, hnf
from ..numfield import (
    DilateSystem,
    FieldError,
    FractionalIdealLattice,
    IntegralBasis,
    dilate_matrices,
    ideal_inverse,
    ideal_power,
    ideal_product,
    preimage_ideal,
)
from .staircase import Flag


@dataclass(frozen=True)
class IdealFlags:
    F: Flag  # in coordinates of the denominator ideal
    G: Flag  # in coordinates of the ring of integers
    a: tuple[FractionalIdealLattice, ...]  # a_0 = O, ..., a_k = denominator ideal
    b: tuple[FractionalIdealLattice, ...]  # b_1, ..., b_k
    c: tuple[FractionalIdealLattice, ...]  # c_{n,0}, ..., c_{n,k-1}
    dilate_matrices: tuple  # multiplication by 1, lambda_1, ... from denominator to O coordinates
    n: tuple[int, ...]


def _ideal_to_lattice(I: FractionalIdealLattice) -> IntegerLattice:
    if I.denominator != 1:
        raise FieldError("ideal is not integral")
    return I.lattice


def _in_ideal_coords(I: FractionalIdealLattice, host: FractionalIdealLattice) -> IntegerLattice:
    cols = []
    for col in I.columns():
        c = host.coords_of(col)
        if any(x.denominator != 1 for x in c):
            raise FieldError("ideal is not contained in the host ideal")
        cols.append([int(x) for x in c])
    return hnf(cols)


def ideal_chain(sys: DilateSystem, basis: IntegralBasis):
    """a_l = O n lambda_1^-1 O n ... n lambda_l^-1 O and b_l = a_l a_{l-1}^-1."""
    a = [FractionalIdealLattice.unit(sys.d)]
    for l in range(1, sys.k + 1):
        a.append(preimage_ideal(sys.dilates[:l], basis))
    b = []
    for l in range(1, sys.k + 1):
        bl = ideal_product(a[l], ideal_inverse(a[l - 1], basis), basis)
        if not bl.is_integral():
            raise FieldError("quotient ideal b_l is not integral")
        b.append(bl)
    return a, b


def flags_from_ideals(sys: DilateSystem, basis: IntegralBasis, n: Sequence[int]) -> IdealFlags:
    """F_n = {a_k c_{n,0} <= ... <= a_k c_{n,k-1} <= a_k} and G_n = {c_{n,0} <= ... <= O}."""
    k = sys.k
    n = tuple(int(x) for x in n)
    if len(n) != k or any(x < 0 for x in n):
        raise ValueError(f"n must be {k} non-negative integers")
    a, b = ideal_chain(sys, basis)
    c = []
    for l in range(k):
        cur = FractionalIdealLattice.unit(sys.d)
        for j in range(l + 1, k + 1):
            cur = ideal_product(cur, ideal_power(b[j - 1], n[j - 1], basis), basis)
        c.append(cur)
    dd = a[k]
    f_ideals = [ideal_product(dd, cl, basis) for cl in c] + [dd]
    F = Flag.of([_in_ideal_coords(I, dd) for I in f_ideals])
    G = Flag.of([_ideal_to_lattice(cl) for cl in c] + [_ideal_to_lattice(FractionalIdealLattice.unit(sys.d))])
    _, mats = dilate_matrices(sys, basis)
    return IdealFlags(F, G, tuple(a), tuple(b), tuple(c), tuple(tuple(map(tuple, m)) for m in mats), n)


def denominator_to_integer_coords(sys: DilateSystem, basis: IntegralBasis) -> list[list[int]]:
    """Integer matrix taking denominator-ideal coordinates to O coordinates."""
    return [list(r) for r in dilate_matrices(sys, basis)[1][0]]
