"""Lattice densities LD(A; F) of periodic sets with respect to flags."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Sequence

import numpy as np

from ..exactalg.lattice import DEFAULT_INDEX_CAP, IntegerLattice, coset_reps, is_sublattice, lattice_intersect
from .periodic import PeriodicSet, density

Vector = tuple[int, ...]


@dataclass(frozen=True)
class Flag:
    """L_1 <= L_2 <= ... <= L_k, full-rank sublattices of Z^d."""

    lattices: tuple[IntegerLattice, ...]

    def __post_init__(self):
        if not self.lattices:
            raise ValueError("a flag needs at least one lattice")
        for a, b in zip(self.lattices, self.lattices[1:]):
            if not is_sublattice(a, b):
                raise ValueError("flag lattices are not nested")

    @classmethod
    def of(cls, lattices: Sequence[IntegerLattice]) -> "Flag":
        return cls(tuple(lat.linear() for lat in lattices))

    @property
    def k(self) -> int:
        return len(self.lattices)

    @property
    def dim(self) -> int:
        return self.lattices[0].dim

    def __getitem__(self, l: int) -> IntegerLattice:
        """L_l with 1-based indexing."""
        return self.lattices[l - 1]

    def index(self, l: int) -> int:
        """[L_l : L_{l-1}] for l >= 2."""
        return self.lattices[l - 2].index // self.lattices[l - 1].index

    @property
    def grid_dims(self) -> tuple[int, ...]:
        return tuple(self.index(l) for l in range(2, self.k + 1))

    def truncated(self) -> "Flag":
        return Flag(self.lattices[:-1])


@dataclass(frozen=True)
class StaircaseBody:
    """Union over cells of [0, h(cell)] x cell, cells of width 1/m_l on axis l >= 2.

    ``heights`` is stored row-major over ``grid_dims`` (axis 2 first).
    """

    grid_dims: tuple[int, ...]
    heights: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.heights) != prod(self.grid_dims):
            raise ValueError("height count does not match grid")
        if any(not 0 <= h <= 1 for h in self.heights):
            raise ValueError("heights must lie in [0, 1]")

    @classmethod
    def from_array(cls, arr: np.ndarray) -> "StaircaseBody":
        return cls(tuple(arr.shape), tuple(Fraction(x) for x in arr.ravel()))

    @property
    def k(self) -> int:
        return len(self.grid_dims) + 1

    def array(self) -> np.ndarray:
        arr = np.empty(len(self.heights), dtype=object)
        arr[:] = list(self.heights)
        return arr.reshape(self.grid_dims)

    def height(self, cell: Sequence[int]) -> Fraction:
        return self.array()[tuple(cell)] if self.grid_dims else self.heights[0]

    def is_compressed(self) -> bool:
        arr = self.array()
        for ax in range(arr.ndim):
            if arr.shape[ax] > 1:
                a = np.take(arr, range(1, arr.shape[ax]), axis=ax)
                b = np.take(arr, range(arr.shape[ax] - 1), axis=ax)
                if any(x > y for x, y in zip(a.ravel(), b.ravel())):
                    return False
        return True

    def is_empty(self) -> bool:
        return all(h == 0 for h in self.heights)

    def contains_point(self, point: Sequence) -> bool:
        """Membership of (r, m_2/M_2, ..., m_k/M_k) with r > 0 and positive m_l."""
        r, *rest = [Fraction(x) for x in point]
        cell = []
        for x, m in zip(rest, self.grid_dims):
            c = x * m
            if c.denominator != 1 or not 1 <= c <= m:
                raise ValueError("point is not on the canonical grid")
            cell.append(int(c) - 1)
        return self.height(cell) >= r and r > 0

    def corner_points(self) -> list[tuple[Fraction, ...]]:
        """(h(cell), (i_2+1)/M_2, ...) for every cell with positive height."""
        out = []
        for cell in itertools.product(*[range(m) for m in self.grid_dims]):
            h = self.height(cell)
            if h > 0:
                out.append((h,) + tuple(Fraction(i + 1, m) for i, m in zip(cell, self.grid_dims)))
        return out

    def scaled_first_axis(self, c: Fraction) -> "StaircaseBody":
        return StaircaseBody(self.grid_dims, tuple(h * c for h in self.heights))

    def to_json(self) -> dict:
        return {
            "grid_dims": list(self.grid_dims),
            "heights": [str(h) for h in self.heights],
            "volume": str(volume(self)),
            "projections": [str(projection(self, l)) for l in range(1, self.k + 1)],
        }


def compress_last_axis(arr: np.ndarray) -> np.ndarray:
    """Compression along the last axis: sort every column non-increasingly."""
    out = np.empty_like(arr)
    for idx in np.ndindex(arr.shape[:-1]):
        col = sorted(arr[idx], reverse=True)
        out[idx] = col
    return out


def _prepare(A: PeriodicSet, F: Flag, cap: int) -> tuple[IntegerLattice, set[Vector]]:
    """Residues of A within L_k, modulo a common period Q inside L_1."""
    q = lattice_intersect(A.period, F[1])
    refined = A.refine(q, cap)
    top = F[F.k]
    return q, {r for r in refined.residues if top.contains(r)}


def _ld_array(S: set[Vector], F: Flag, level: int, q: IntegerLattice, cap: int) -> np.ndarray:
    if level == 1:
        arr = np.empty((), dtype=object)
        arr[()] = Fraction(len(S), q.index // F[1].index)
        return arr
    upper, lower = F[level], F[level - 1]
    groups: dict[Vector, list[Vector]] = {}
    for s in S:
        groups.setdefault(lower.reduce(s), []).append(s)
    parts = []
    for a in coset_reps(upper, lower, cap):
        key = lower.reduce(tuple(-x for x in a))
        shifted = {q.reduce(tuple(x + y for x, y in zip(s, a))) for s in groups.get(key, ())}
        parts.append(_ld_array(shifted, F, level - 1, q, cap))
    stacked = np.stack(parts, axis=-1)
    return compress_last_axis(stacked)


def lattice_density(A: PeriodicSet, F: Flag, cap: int = DEFAULT_INDEX_CAP) -> StaircaseBody:
    """LD(A; F) in canonical (compressed) staircase form."""
    q, S = _prepare(A, F, cap)
    return StaircaseBody.from_array(_ld_array(S, F, F.k, q, cap))


def volume(S: StaircaseBody) -> Fraction:
    return sum(S.heights, Fraction(0)) / prod(S.grid_dims)


def projection(S: StaircaseBody, l: int) -> Fraction:
    """Length of the projection of the body onto axis l (1-based)."""
    if not 1 <= l <= S.k:
        raise ValueError("axis out of range")
    if l == 1:
        return max(S.heights)
    arr = S.array()
    m = S.grid_dims[l - 2]
    idx = [0] * arr.ndim
    count = 0
    for i in range(m):
        idx[l - 2] = i
        if arr[tuple(idx)] > 0:
            count += 1
    return Fraction(count, m)


def projection_direct(A: PeriodicSet, F: Flag, l: int, cap: int = DEFAULT_INDEX_CAP) -> Fraction:
    """The same projection lengths computed from densities and coset counts alone."""
    top = F[F.k]
    if l == 1:
        return max(density(A.translate(a), F[1], cap) for a in coset_reps(top, F[1], cap))
    q = lattice_intersect(A.period, F[1])
    pts = [r for r in A.refine(q, cap).residues if top.contains(r)]
    upper, lower = F[l], F[l - 1]
    classes: dict[Vector, set[Vector]] = {}
    for p in pts:
        classes.setdefault(upper.reduce(p), set()).add(lower.reduce(p))
    best = max((len(v) for v in classes.values()), default=0)
    return Fraction(best, F.index(l))


# ---------------------------------------------------------------------------
# membership by explicit witnesses


def _feasible(A: PeriodicSet, F: Flag, level: int, b: Vector, counts: Sequence[int], r: Fraction, cap: int):
    """Witness tree below b + L_level, or None.

    At level 1 the requirement is rho_{L_1}(A + b) >= r.  At level l >= 2 one
    needs counts[l] elements of b + L_l, pairwise distinct modulo L_{l-1},
    each feasible one level down.
    """
    if level == 1:
        return b if density(A.translate(b), F[1], cap) >= r else None
    need = counts[level]
    chosen = []
    for c in coset_reps(F[level], F[level - 1], cap):
        cand = tuple(x + y for x, y in zip(b, c))
        sub = _feasible(A, F, level - 1, cand, counts, r, cap)
        if sub is not None:
            chosen.append((cand, sub))
            if len(chosen) == need:
                return chosen
    return None


def ld_witness(A: PeriodicSet, F: Flag, point: Sequence, cap: int = DEFAULT_INDEX_CAP):
    """Witness family b_{i_l, ..., i_k} for the point, or None if none exists.

    The family is returned as a tree: a list of (b, subtree) pairs per level,
    with the bare vector b at level 1.
    """
    r, *rest = [Fraction(x) for x in point]
    if len(rest) != F.k - 1:
        raise ValueError("point has wrong dimension")
    if r <= 0:
        raise ValueError("first coordinate must be positive")
    counts = {}
    for l, x in zip(range(2, F.k + 1), rest):
        c = x * F.index(l)
        if c.denominator != 1 or not 1 <= c <= F.index(l):
            raise ValueError("point is not on the canonical grid")
        counts[l] = int(c)
    origin = (0,) * F.dim
    if F.k == 1:
        return _feasible(A, F, 1, origin, counts, r, cap)
    return _feasible(A, F, F.k, origin, counts, r, cap)


def ld_contains(A: PeriodicSet, F: Flag, point: Sequence, cap: int = DEFAULT_INDEX_CAP) -> bool:
    """Membership decided by an exhaustive search for witnesses b in L_k."""
    return ld_witness(A, F, point, cap) is not None


def check_witness(A: PeriodicSet, F: Flag, point: Sequence, tree, cap: int = DEFAULT_INDEX_CAP) -> bool:
    """Verify the nesting, separation and density conditions of a witness tree."""
    r = Fraction(point[0])
    top = F[F.k]

    def diff_in(lat, a, b):
        return lat.contains(tuple(x - y for x, y in zip(a, b)))

    def walk(node, level):
        if level == 1:
            return top.contains(node) and density(A.translate(node), F[1], cap) >= r
        if len(node) != Fraction(point[level - 1]) * F.index(level):
            return False
        lower = F[level - 1]
        if len({lower.reduce(b) for b, _ in node}) != len(node):
            return False
        for b, sub in node:
            if level - 1 >= 2 and not all(diff_in(lower, c, b) for c, _ in sub):
                return False
            if level - 1 == 1 and sub != b:
                return False
            if not walk(sub, level - 1):
                return False
        return True

    if tree is None:
        return False
    return walk(tree, F.k)
