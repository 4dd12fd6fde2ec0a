"""Local lattice densities LD_S(A; F) = LD((A n S) + P; F) for tileable boxes S."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from ..exactalg.lattice import DEFAULT_INDEX_CAP, IntegerLattice, is_sublattice, scalar_lattice
from .periodic import PeriodicSet
from .staircase import Flag, StaircaseBody, lattice_density


class TilingError(ValueError):
    pass


@dataclass(frozen=True)
class Box:
    """Half-open cube origin + [0, side)^d."""

    origin: tuple[int, ...]
    side: int

    @property
    def dim(self) -> int:
        return len(self.origin)

    @property
    def volume(self) -> int:
        return self.side**self.dim

    def contains(self, p: Sequence[int]) -> bool:
        return all(o <= x < o + self.side for o, x in zip(self.origin, p))

    def points(self) -> Iterable[tuple[int, ...]]:
        return itertools.product(*[range(o, o + self.side) for o in self.origin])

    def subcubes(self, m: int) -> list["Box"]:
        if self.side % m:
            raise TilingError("side not divisible by the split factor")
        s = self.side // m
        return [Box(tuple(o + s * i for o, i in zip(self.origin, idx)), s) for idx in itertools.product(range(m), repeat=self.dim)]


def _points_in(A, S: Box) -> list[tuple[int, ...]]:
    if isinstance(A, PeriodicSet):
        return [p for p in S.points() if A.contains(p)]
    return [tuple(p) for p in A if S.contains(p)]


def check_tiling(S: Box, P: IntegerLattice, F: Flag) -> None:
    """P must lie in L_1 and the lattice points of S must represent Z^d / P."""
    if not is_sublattice(P, F[1]):
        raise TilingError("tiling lattice is not inside L_1")
    if P.index != S.volume:
        raise TilingError("tiling lattice has the wrong covolume")
    if len({P.reduce(p) for p in S.points()}) != S.volume:
        raise TilingError("box is not a fundamental domain of the tiling lattice")


def local_ld(A, S: Box, F: Flag, tiling: IntegerLattice | None = None, cap: int = DEFAULT_INDEX_CAP) -> StaircaseBody:
    """LD((A n S) + P; F) with P = side * Z^d unless another tiling is given."""
    P = scalar_lattice(S.dim, S.side) if tiling is None else tiling
    check_tiling(S, P, F)
    pts = _points_in(A, S)
    return lattice_density(PeriodicSet(P, frozenset(pts)), F, cap)


def local_volume_direct(A, S: Box, F: Flag) -> Fraction:
    """|A n S| / |L_k n S|."""
    top = F[F.k]
    pts = [p for p in _points_in(A, S) if top.contains(p)]
    total = sum(1 for p in S.points() if top.contains(p))
    return Fraction(len(pts), total)


def rescale_first_axis(body: StaircaseBody, small: Box, big: Box) -> StaircaseBody:
    """The body for ``big`` predicted from the body for ``small``: x_1 -> Vol(small)/Vol(big) x_1."""
    return body.scaled_first_axis(Fraction(small.volume, big.volume))
