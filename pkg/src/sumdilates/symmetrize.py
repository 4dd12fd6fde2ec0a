"""Voxel-grid Minkowski sums, symmetrizations and the continuous sum-of-dilates bound."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.signal import fftconvolve

SNAP = 1e-9
DEFAULT_VOXEL_CAP = 2 * 10**8


@dataclass(frozen=True, eq=False)
class VoxelSet:
    """Union of closed voxels [i h, (i+1) h] over occupied indices i = origin + grid index."""

    h: Fraction
    origin: tuple[int, ...]
    grid: np.ndarray  # boolean occupancy

    def __post_init__(self):
        g = np.asarray(self.grid, dtype=bool)
        if g.ndim != len(self.origin):
            raise ValueError("origin and grid dimension differ")
        object.__setattr__(self, "grid", g)
        object.__setattr__(self, "h", Fraction(self.h))

    @property
    def dim(self) -> int:
        return self.grid.ndim

    @property
    def count(self) -> int:
        return int(self.grid.sum())

    @property
    def measure(self) -> Fraction:
        return self.count * self.h**self.dim

    def indices(self) -> np.ndarray:
        return np.argwhere(self.grid) + np.array(self.origin)

    def index_set(self) -> frozenset[tuple[int, ...]]:
        return frozenset(tuple(int(x) for x in row) for row in self.indices())

    @classmethod
    def from_indices(cls, h, idx: np.ndarray | Sequence[Sequence[int]], dim: int | None = None) -> "VoxelSet":
        idx = np.asarray(idx, dtype=np.int64)
        if idx.size == 0:
            d = dim if dim is not None else 1
            return cls(Fraction(h), (0,) * d, np.zeros((0,) * d, dtype=bool))
        lo = idx.min(axis=0)
        shape = idx.max(axis=0) - lo + 1
        g = np.zeros(tuple(shape), dtype=bool)
        g[tuple((idx - lo).T)] = True
        return cls(Fraction(h), tuple(int(x) for x in lo), g)

    def trimmed(self) -> "VoxelSet":
        return VoxelSet.from_indices(self.h, self.indices(), self.dim)

    def same_as(self, other: "VoxelSet") -> bool:
        return self.h == other.h and self.index_set() == other.index_set()

    def issubset(self, other: "VoxelSet") -> bool:
        return self.index_set() <= other.index_set()

    def boundary_count(self) -> int:
        """Occupied voxels with an unoccupied face neighbour."""
        g = np.pad(self.grid, 1)
        inner = g.copy()
        for ax in range(self.dim):
            inner &= np.roll(g, 1, axis=ax) & np.roll(g, -1, axis=ax)
        return int((g & ~inner).sum())


# ---------------------------------------------------------------------------
# shapes


def rasterize(shape: dict, h) -> VoxelSet:
    """Voxels whose centres lie in a primitive shape.

    Shapes: {"box": [[lo...], [hi...]]}, {"disk": {"center": [...], "radius": r}},
    {"union": [shape, ...]}.
    """
    h = Fraction(h)
    lo, hi = _extent(shape)
    ilo = [math.floor(a / h) - 1 for a in lo]
    ihi = [math.ceil(b / h) + 1 for b in hi]
    axes = [(np.arange(a, b) + 0.5) * float(h) for a, b in zip(ilo, ihi)]
    mesh = np.meshgrid(*axes, indexing="ij")
    mask = _inside(shape, mesh)
    return VoxelSet(h, tuple(ilo), mask).trimmed()


def _extent(shape):
    if "box" in shape:
        lo, hi = shape["box"]
        return [float(x) for x in lo], [float(x) for x in hi]
    if "disk" in shape:
        c = [float(x) for x in shape["disk"]["center"]]
        r = float(shape["disk"]["radius"])
        return [x - r for x in c], [x + r for x in c]
    if "union" in shape:
        ext = [_extent(s) for s in shape["union"]]
        d = len(ext[0][0])
        return [min(e[0][i] for e in ext) for i in range(d)], [max(e[1][i] for e in ext) for i in range(d)]
    raise ValueError(f"unknown shape {shape}")


def _inside(shape, mesh):
    if "box" in shape:
        lo, hi = shape["box"]
        m = np.ones(mesh[0].shape, dtype=bool)
        for x, a, b in zip(mesh, lo, hi):
            m &= (x >= float(a)) & (x <= float(b))
        return m
    if "disk" in shape:
        c = shape["disk"]["center"]
        r = float(shape["disk"]["radius"])
        dist = sum((x - float(ci)) ** 2 for x, ci in zip(mesh, c))
        return dist <= r * r
    m = np.zeros(mesh[0].shape, dtype=bool)
    for s in shape["union"]:
        m |= _inside(s, mesh)
    return m


# ---------------------------------------------------------------------------
# Minkowski sums


def _map_outward(A: VoxelSet, mat: np.ndarray) -> VoxelSet:
    """Voxels meeting the image of some voxel of A under ``mat`` (a superset cover)."""
    d = A.dim
    idx = A.indices().astype(float)
    if idx.shape[0] == 0:
        return A
    corners = np.array(np.meshgrid(*[[0.0, 1.0]] * d, indexing="ij")).reshape(d, -1).T  # 2^d x d
    imgs = np.einsum("ij,nkj->nki", mat, (idx[:, None, :] + corners[None, :, :]))  # in units of h
    lo = imgs.min(axis=1)
    hi = imgs.max(axis=1)
    lo_i = np.floor(lo + SNAP).astype(np.int64)
    hi_i = np.ceil(hi - SNAP).astype(np.int64) - 1
    hi_i = np.maximum(hi_i, lo_i)
    base = lo_i.min(axis=0)
    shape = hi_i.max(axis=0) - base + 1
    if int(np.prod(shape)) > DEFAULT_VOXEL_CAP:
        raise MemoryError("mapped voxel grid exceeds cap")
    grid = np.zeros(tuple(shape), dtype=bool)
    width = (hi_i - lo_i).max(axis=0) + 1
    for off in np.ndindex(*width):
        pos = lo_i + np.array(off)
        ok = np.all(pos <= hi_i, axis=1)
        p = pos[ok] - base
        grid[tuple(p.T)] = True
    return VoxelSet(A.h, tuple(int(x) for x in base), grid)


def _pair_sum(A: VoxelSet, B: VoxelSet) -> VoxelSet:
    """Exact Minkowski sum of two voxel unions, as a voxel union."""
    if A.count == 0 or B.count == 0:
        return VoxelSet(A.h, A.origin, np.zeros((0,) * A.dim, dtype=bool))
    size = [a + b - 1 for a, b in zip(A.grid.shape, B.grid.shape)]
    if int(np.prod([s + 1 for s in size])) > DEFAULT_VOXEL_CAP:
        raise MemoryError("sum grid exceeds cap")
    conv = fftconvolve(A.grid.astype(float), B.grid.astype(float), mode="full") > 0.5
    # box i + box j = [i + j, i + j + 2] h, which is voxels i + j and i + j + 1
    out = np.zeros(tuple(s + 1 for s in size), dtype=bool)
    for off in np.ndindex(*([2] * A.dim)):
        sl = tuple(slice(o, o + s) for o, s in zip(off, size))
        out[sl] |= conv
    origin = tuple(a + b for a, b in zip(A.origin, B.origin))
    return VoxelSet(A.h, origin, out)


def voxel_sum(sets: Sequence[VoxelSet], maps: Sequence[Sequence[Sequence[float]]]) -> VoxelSet:
    """Outward-rounded L_1 A_1 + ... + L_k A_k: contains the true Minkowski sum."""
    if len(sets) != len(maps) or not sets:
        raise ValueError("need one map per set")
    h = sets[0].h
    if any(s.h != h for s in sets):
        raise ValueError("sets must share a resolution")
    imgs = [_map_outward(s, np.asarray(m, dtype=float)) for s, m in zip(sets, maps)]
    out = imgs[0]
    for img in imgs[1:]:
        out = _pair_sum(out, img)
    return out


# ---------------------------------------------------------------------------
# symmetrizations


def steiner_1d(A: VoxelSet, axis: int) -> VoxelSet:
    """Each line along ``axis`` becomes a contiguous run of the same length starting at -(c // 2)."""
    g = np.moveaxis(A.grid, axis, -1)
    counts = g.sum(axis=-1)
    c_max = int(counts.max()) if counts.size else 0
    if c_max == 0:
        return VoxelSet(A.h, A.origin, np.zeros((0,) * A.dim, dtype=bool))
    lo = -(c_max // 2)
    pos = np.arange(lo, lo + c_max)
    starts = -(counts // 2)
    new = (pos >= starts[..., None]) & (pos < (starts + counts)[..., None])
    origin = list(A.origin)
    origin[axis] = lo
    return VoxelSet(A.h, tuple(origin), np.moveaxis(new, -1, axis)).trimmed()


def disk_order(count: int) -> list[tuple[int, int]]:
    """First ``count`` voxels by distance of their centre from 0, then angle, then index."""
    r = int(math.isqrt(count)) + 2
    cells = [(i, j) for i in range(-r, r) for j in range(-r, r)]
    key = lambda c: ((2 * c[0] + 1) ** 2 + (2 * c[1] + 1) ** 2, math.atan2(2 * c[1] + 1, 2 * c[0] + 1), c)
    return sorted(cells, key=key)[:count]


def ball_rearrange_2d(A: VoxelSet, axes: tuple[int, int] = (0, 1)) -> VoxelSet:
    """Each 2-d slice along ``axes`` becomes a centred discrete disk of the same voxel count."""
    if A.dim < 2:
        raise ValueError("need at least two dimensions")
    a0, a1 = axes
    rest = [i for i in range(A.dim) if i not in axes]
    g = np.transpose(A.grid, rest + [a0, a1])
    idx_rest = np.ndindex(*g.shape[:-2]) if rest else [()]
    out = []
    for key in idx_rest:
        c = int(g[key].sum())
        if not c:
            continue
        for i, j in disk_order(c):
            full = [0] * A.dim
            for axis, k in zip(rest, key):
                full[axis] = k + A.origin[axis]
            full[a0], full[a1] = i, j
            out.append(full)
    return VoxelSet.from_indices(A.h, out, A.dim)


# ---------------------------------------------------------------------------
# eigenstructures and the continuous bound


@dataclass(frozen=True)
class Block:
    dim: int  # 1 or 2
    scales: tuple[float, ...]  # one per map
    angles: tuple[float, ...] = ()  # one per map, 2-d blocks only


@dataclass(frozen=True)
class EigenStructure:
    """R^d as a sum of blocks on which map l acts by scale r_lj times a rotation."""

    blocks: tuple[Block, ...]

    def __post_init__(self):
        n = {len(b.scales) for b in self.blocks}
        if len(n) != 1:
            raise ValueError("every block needs one scale per map")
        for b in self.blocks:
            if b.dim not in (1, 2):
                raise ValueError("blocks have dimension 1 or 2")
            if b.dim == 2 and b.angles and len(b.angles) != len(b.scales):
                raise ValueError("2-d blocks need one angle per map")

    @property
    def dim(self) -> int:
        return sum(b.dim for b in self.blocks)

    @property
    def k(self) -> int:
        return len(self.blocks[0].scales)

    def maps(self) -> list[np.ndarray]:
        d = self.dim
        out = []
        for l in range(self.k):
            m = np.zeros((d, d))
            pos = 0
            for b in self.blocks:
                r = b.scales[l]
                if b.dim == 1:
                    m[pos, pos] = r
                else:
                    t = b.angles[l] if b.angles else 0.0
                    m[pos:pos + 2, pos:pos + 2] = r * np.array([[math.cos(t), -math.sin(t)], [math.sin(t), math.cos(t)]])
                pos += b.dim
            out.append(m)
        return out

    def factor(self) -> float:
        """prod_j (sum_l |r_lj|)^{dim_j}."""
        return math.prod(sum(abs(r) for r in b.scales) ** b.dim for b in self.blocks)


@dataclass(frozen=True)
class CtsReport:
    measure_a: float
    measured: float
    bound: float
    budget: float
    passed: bool

    def to_json(self) -> dict:
        return {"measure_a": self.measure_a, "measured": self.measured, "bound": self.bound, "budget": self.budget, "passed": self.passed}


def verify_cts_bound(A: VoxelSet, E: EigenStructure, maps: Sequence | None = None) -> CtsReport:
    """Compare the measured outward sum with prod_j (sum_l r_lj)^{d_j} mu(A)."""
    canonical = E.maps()
    if maps is None:
        maps = canonical
    elif len(maps) != len(canonical) or any(not np.allclose(np.asarray(m, float), c, atol=1e-12) for m, c in zip(maps, canonical)):
        raise ValueError("maps are not consistent with the eigenstructure")
    if A.dim != E.dim:
        raise ValueError("dimension mismatch")
    S = voxel_sum([A] * len(maps), maps)
    mu_a = float(A.measure)
    measured = float(S.measure)
    bound = E.factor() * mu_a
    budget = S.boundary_count() * float(A.h) ** A.dim
    return CtsReport(mu_a, measured, bound, budget, measured >= bound - budget)
