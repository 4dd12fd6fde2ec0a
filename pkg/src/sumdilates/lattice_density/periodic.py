"""Periodic subsets of Z^d: a period lattice and a residue set."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from ..exactalg.lattice import (
    DEFAULT_INDEX_CAP,
    CapExceeded,
    IntegerLattice,
    coset_reps,
    hnf,
    is_sublattice,
    lattice_image,
    lattice_intersect,
    lattice_sum,
    standard_lattice,
)

Vector = tuple[int, ...]


@dataclass(frozen=True)
class PeriodicSet:
    """A = residues + period, residues reduced into the HNF domain of the period."""

    period: IntegerLattice
    residues: frozenset[Vector]

    def __post_init__(self):
        if self.period.shift is not None:
            raise ValueError("period must be a linear lattice")
        red = frozenset(self.period.reduce(r) for r in self.residues)
        if len(red) > self.period.index:
            raise ValueError("more residues than cosets")
        object.__setattr__(self, "residues", red)

    @classmethod
    def of(cls, period: IntegerLattice | Sequence[Sequence[int]] | int, residues: Iterable) -> "PeriodicSet":
        """``period`` may be a lattice, a list of basis columns, or an integer (d = 1)."""
        if isinstance(period, int):
            period = hnf([[period]])
        elif not isinstance(period, IntegerLattice):
            period = hnf(period)
        res = []
        for r in residues:
            res.append((int(r),) if isinstance(r, int) else tuple(int(x) for x in r))
        return cls(period, frozenset(res))

    @classmethod
    def full(cls, d: int) -> "PeriodicSet":
        return cls(standard_lattice(d), frozenset({(0,) * d}))

    @classmethod
    def empty(cls, d: int) -> "PeriodicSet":
        return cls(standard_lattice(d), frozenset())

    @property
    def dim(self) -> int:
        return self.period.dim

    def is_empty(self) -> bool:
        return not self.residues

    def contains(self, v: Sequence[int]) -> bool:
        return self.period.reduce(v) in self.residues

    def translate(self, a: Sequence[int]) -> "PeriodicSet":
        return PeriodicSet(self.period, frozenset(tuple(x + int(y) for x, y in zip(r, a)) for r in self.residues))

    def refine(self, sub: IntegerLattice, cap: int = DEFAULT_INDEX_CAP) -> "PeriodicSet":
        """Same set, described with the smaller period ``sub``."""
        if not is_sublattice(sub, self.period):
            raise ValueError("not a sublattice")
        count = (sub.index // self.period.index) * len(self.residues)
        if count > cap:
            raise CapExceeded(f"refined residue count {count} exceeds cap {cap}")
        reps = coset_reps(self.period, sub, cap)
        res = frozenset(sub.reduce(tuple(a + b for a, b in zip(r, c))) for r in self.residues for c in reps)
        return PeriodicSet(sub.linear(), res)

    def common_refinement(self, other: IntegerLattice, cap: int = DEFAULT_INDEX_CAP) -> "PeriodicSet":
        return self.refine(lattice_intersect(self.period, other.linear()), cap)

    def image(self, mat: Sequence[Sequence[int]]) -> "PeriodicSet":
        """Image under a nonsingular integer matrix (rows)."""
        per = lattice_image(mat, self.period)
        res = [tuple(sum(int(row[j]) * r[j] for j in range(self.dim)) for row in mat) for r in self.residues]
        return PeriodicSet(per, frozenset(res))

    def union(self, other: "PeriodicSet") -> "PeriodicSet":
        q = lattice_intersect(self.period, other.period)
        return PeriodicSet(q, self.refine(q).residues | other.refine(q).residues)

    def issubset(self, other: "PeriodicSet") -> bool:
        q = lattice_intersect(self.period, other.period)
        return self.refine(q).residues <= other.refine(q).residues

    def minimal_period(self) -> "PeriodicSet":
        """Same set with its full group of translational symmetries as period."""
        if not self.residues:
            return PeriodicSet.empty(self.dim)
        base = next(iter(sorted(self.residues)))
        gens = list(self.period.basis)
        for r in sorted(self.residues):
            v = tuple(a - b for a, b in zip(r, base))
            if all(self.contains(tuple(x + y for x, y in zip(s, v))) for s in self.residues):
                gens.append(v)
        per = hnf(gens)
        return PeriodicSet(per, frozenset(per.reduce(r) for r in self.residues))

    def same_set(self, other: "PeriodicSet") -> bool:
        return self.minimal_period() == other.minimal_period()

    def points_in_box(self, lo: Sequence[int], side: int) -> list[Vector]:
        return [p for p in itertools.product(*[range(a, a + side) for a in lo]) if self.contains(p)]

    def __repr__(self) -> str:
        return f"PeriodicSet({sorted(self.residues)} + {self.period})"


def density(A: PeriodicSet, M: IntegerLattice, cap: int = DEFAULT_INDEX_CAP) -> Fraction:
    """Density of A intersected with the affine lattice M, inside M."""
    lin = M.linear()
    q = lattice_intersect(A.period, lin)
    reps = coset_reps(lin, q, cap)
    shift = M.shift or (0,) * M.dim
    hits = sum(1 for c in reps if A.contains(tuple(a + b for a, b in zip(c, shift))))
    return Fraction(hits, len(reps))


def periodic_sumset(sets: Sequence[PeriodicSet], mats: Sequence[Sequence[Sequence[int]]], cap: int = DEFAULT_INDEX_CAP) -> PeriodicSet:
    """Exact L_0 A_0 + ... + L_k A_k for periodic sets and nonsingular integer L_l.

    The sum of the image periods is a period of the result; the answer is
    reported with its minimal period.
    """
    if len(sets) != len(mats) or not sets:
        raise ValueError("need one matrix per set")
    images = [A.image(m) for A, m in zip(sets, mats)]
    if any(B.is_empty() for B in images):
        return PeriodicSet.empty(images[0].dim)
    per = images[0].period
    for B in images[1:]:
        per = lattice_sum(per, B.period)
    cur = {per.reduce(r) for r in images[0].residues}
    for B in images[1:]:
        if len(cur) * len(B.residues) > cap:
            raise CapExceeded("periodic sumset exceeds cap")
        cur = {per.reduce(tuple(x + y for x, y in zip(a, b))) for a in cur for b in B.residues}
    return PeriodicSet(per, frozenset(cur)).minimal_period()
