"""Exact finite sumsets L_0 A_0 + ... + L_k A_k and A + lambda_1 A + ... + lambda_k A."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, lcm
from typing import Iterable, Sequence

import numpy as np

from .exactalg import linalg as la
from .exactalg.lattice import CapExceeded
from .embeddings import RealInterval, certified_roots, embed_coeffs
from .numfield import DilateSystem, FieldElement, FieldError, IntegralBasis, dilate_matrices

DEFAULT_CAP = 10**8
CHUNK = 2_000_000
INT64_SAFE = 2**62
AMBIGUOUS_FRACTION = 0.01


@dataclass(frozen=True)
class PointSet:
    dim: int
    points: frozenset[tuple[int, ...]]

    @classmethod
    def of(cls, points: Iterable[Sequence[int]], dim: int | None = None) -> "PointSet":
        pts = frozenset(tuple(int(x) for x in p) for p in points)
        if dim is None:
            if not pts:
                raise ValueError("dimension of an empty set must be given")
            dim = len(next(iter(pts)))
        if any(len(p) != dim for p in pts):
            raise ValueError("points of mixed dimension")
        return cls(dim, pts)

    @classmethod
    def from_array(cls, arr: np.ndarray) -> "PointSet":
        arr = np.asarray(arr)
        return cls(arr.shape[1], frozenset(tuple(int(x) for x in row) for row in arr))

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, p) -> bool:
        return tuple(p) in self.points

    def sorted(self) -> list[tuple[int, ...]]:
        return sorted(self.points)

    def as_array(self) -> np.ndarray:
        if not self.points:
            return np.zeros((0, self.dim), dtype=object)
        return np.array(self.sorted(), dtype=object)

    def translate(self, v: Sequence[int]) -> "PointSet":
        return PointSet(self.dim, frozenset(tuple(a + b for a, b in zip(p, v)) for p in self.points))

    def scale(self, u: int) -> "PointSet":
        return PointSet(self.dim, frozenset(tuple(u * a for a in p) for p in self.points))

    def image(self, mat: Sequence[Sequence[int]]) -> "PointSet":
        return PointSet(len(mat), frozenset(tuple(sum(r[j] * p[j] for j in range(self.dim)) for r in mat) for p in self.points))

    def to_lines(self) -> str:
        return "".join(" ".join(str(x) for x in p) + "\n" for p in self.sorted())

    @classmethod
    def from_lines(cls, text: str, dim: int | None = None) -> "PointSet":
        rows = [line.split() for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]
        return cls.of([[int(x) for x in r] for r in rows], dim)


@dataclass(frozen=True)
class RatioReport:
    n: int
    size_a: int
    size_sum: int
    ratio: Fraction
    h_reference: RealInterval
    margin: int
    ambiguous: int = 0

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "size_a": self.size_a,
            "size_sum": self.size_sum,
            "ratio": float(self.ratio),
            "ratio_exact": str(self.ratio),
            "h_lo": float(self.h_reference.lo),
            "h_hi": float(self.h_reference.hi),
            "margin": self.margin,
            "ambiguous": self.ambiguous,
        }


# ---------------------------------------------------------------------------
# matrix sumsets


def _images(sets: Sequence[PointSet], mats: Sequence[Sequence[Sequence[int]]]) -> list[list[tuple[int, ...]]]:
    if len(sets) != len(mats):
        raise ValueError("need one matrix per set")
    if not sets:
        raise ValueError("need at least one set")
    d = len(mats[0])
    for s, m in zip(sets, mats):
        if len(m[0]) != s.dim or len(m) != d:
            raise ValueError("matrix and point dimensions disagree")
    return [sorted(s.image(m).points) for s, m in zip(sets, mats)]


def _bound(images) -> int:
    return sum(max((abs(x) for p in img for x in p), default=0) for img in images)


def _unique_rows(arr: np.ndarray) -> np.ndarray:
    if arr.shape[0] == 0:
        return arr
    return np.unique(arr, axis=0)


def _sum_pair(cur: np.ndarray, img: np.ndarray) -> np.ndarray:
    """Unique rows of {c + i}, processed in chunks to bound memory.

    Rows are packed into one int64 key (mixed radix over the bounding box)
    whenever the box is small enough, since 1-d unique is much faster.
    """
    lo = cur.min(axis=0) + img.min(axis=0)
    span = cur.max(axis=0) + img.max(axis=0) - lo + 1
    packed = float(np.prod(span.astype(float))) < INT64_SAFE
    if packed:
        radix = np.ones(len(span), dtype=np.int64)
        for i in range(len(span) - 2, -1, -1):
            radix[i] = radix[i + 1] * span[i + 1]
    parts = []
    step = max(1, CHUNK // max(1, img.shape[0]))
    for start in range(0, cur.shape[0], step):
        block = cur[start:start + step]
        s = (block[:, None, :] + img[None, :, :]).reshape(-1, cur.shape[1])
        parts.append(np.unique((s - lo) @ radix) if packed else _unique_rows(s))
    if not packed:
        return _unique_rows(np.concatenate(parts, axis=0))
    keys = np.unique(np.concatenate(parts))
    out = np.empty((keys.shape[0], len(span)), dtype=np.int64)
    for i in range(len(span)):
        out[:, i] = keys // radix[i]
        keys = keys % radix[i]
    return out + lo


def linear_sumset(sets: Sequence[PointSet], mats: Sequence[Sequence[Sequence[int]]], cap: int = DEFAULT_CAP) -> PointSet:
    """{L_0 a_0 + ... + L_k a_k : a_l in A_l} computed exactly.

    Each step forms at most |current| * |next image| sums; a step whose
    count would exceed ``cap`` is refused before anything is allocated.
    """
    images = _images(sets, mats)
    d = len(mats[0])
    if any(not img for img in images):
        return PointSet(d, frozenset())
    if _bound(images) >= INT64_SAFE:
        return _python_sumset(images, d, cap)
    cur = _unique_rows(np.array(images[0], dtype=np.int64).reshape(-1, d))
    for img in images[1:]:
        arr = np.array(img, dtype=np.int64).reshape(-1, d)
        if cur.shape[0] * arr.shape[0] > cap:
            raise CapExceeded(f"projected cardinality {cur.shape[0] * arr.shape[0]} exceeds cap {cap}")
        cur = _sum_pair(cur, arr)
    return PointSet.from_array(cur)


def _python_sumset(images, d: int, cap: int) -> PointSet:
    cur = set(images[0])
    for img in images[1:]:
        if len(cur) * len(img) > cap:
            raise CapExceeded(f"projected cardinality {len(cur) * len(img)} exceeds cap {cap}")
        cur = {tuple(a + b for a, b in zip(p, q)) for p in cur for q in img}
    return PointSet(d, frozenset(cur))


def naive_linear_sumset(sets: Sequence[PointSet], mats: Sequence[Sequence[Sequence[int]]]) -> PointSet:
    """Reference implementation: one nested loop over all tuples (a_0, ..., a_k)."""
    d = len(mats[0])
    out = set()
    for combo in itertools.product(*[sorted(s.points) for s in sets]):
        v = [0] * d
        for m, a in zip(mats, combo):
            for i in range(d):
                v[i] += sum(m[i][j] * a[j] for j in range(len(a)))
        out.add(tuple(v))
    return PointSet(d, frozenset(out))


# ---------------------------------------------------------------------------
# sums of dilates in a number field


def field_sumset_coords(pts: PointSet, sys: DilateSystem, basis: IntegralBasis, cap: int = DEFAULT_CAP) -> int:
    """|A + lambda_1 A + ...| for A given by coordinates in the denominator ideal."""
    _, mats = dilate_matrices(sys, basis)
    return len(linear_sumset([pts] * len(mats), mats, cap))


def field_sumset(A: Sequence[FieldElement], sys: DilateSystem, basis: IntegralBasis, cap: int = DEFAULT_CAP, check: bool = True) -> int:
    """|A + lambda_1 A + ... + lambda_k A| exactly.

    A is first rescaled by the least positive integer moving it into the
    denominator ideal, which does not change the cardinality.
    """
    if not A:
        return 0
    dd, mats = dilate_matrices(sys, basis)
    coords = [dd.coords_of(basis.to_coords(a)) for a in A]
    m = lcm(*(c.denominator for v in coords for c in v))
    pts = PointSet.of([[int(c * m) for c in v] for v in coords], sys.d)
    size = len(linear_sumset([pts] * len(mats), mats, cap))
    if check and len(A) ** (sys.k + 1) <= 20000:
        direct = {
            sum((lam * a for lam, a in zip(sys.with_unit(), combo)), sys.field.zero()).coeffs
            for combo in itertools.product(A, repeat=sys.k + 1)
        }
        if len(direct) != size:
            raise AssertionError("coordinate sumset disagrees with direct field arithmetic")
    return size


# ---------------------------------------------------------------------------
# the extremal construction


def _blocks(E) -> list[int]:
    """Real embeddings and one representative per conjugate pair."""
    seen, out = set(), []
    for i in range(E.degree):
        if i in seen:
            continue
        seen.add(i)
        seen.add(E.pairing[i])
        out.append(i)
    return out


def extremal_set(sys: DilateSystem, basis: IntegralBasis, n: int, radii: Sequence | None = None, audit: dict | None = None) -> PointSet:
    """Points of the denominator ideal (in its coordinates) inside n times a product of balls.

    One constraint |sigma_i(x)| <= n * t_j per real embedding and per
    conjugate pair.  Points whose certified modulus straddles the boundary are
    decided by the interval midpoint and counted in ``audit["ambiguous"]``.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    d = sys.d
    dd, _ = dilate_matrices(sys, basis)
    # power-basis coordinates of the ideal basis
    B = la.mat_mul(basis.matrix, dd.basis_matrix())
    E = certified_roots(sys.field.poly, target_radius=1e-30)
    blocks = _blocks(E)
    t = [Fraction(1)] * len(blocks) if radii is None else [Fraction(r) for r in radii]
    if len(t) != len(blocks) or any(r <= 0 for r in t):
        raise ValueError(f"need {len(blocks)} positive radii")
    bounds = [n * r for r in t]
    if n == 0:
        if audit is not None:
            audit["ambiguous"] = 0
        return PointSet.of([[0] * d], d)

    roots = np.array([complex(z.center) for z in E.roots])
    powers = np.array([[r**j for j in range(d)] for r in roots])  # d x d
    Bf = np.array([[float(x) for x in row] for row in B])
    emb = powers @ Bf  # sigma_i(basis_j)
    # real coordinates: Re for real roots, (Re, Im) for pairs
    rows, limits = [], []
    for b, i in enumerate(blocks):
        rows.append(emb[i].real)
        limits.append(float(bounds[b]))
        if not E.real_mask[i]:
            rows.append(emb[i].imag)
            limits.append(float(bounds[b]))
    V = np.array(rows)
    W = np.linalg.inv(V)
    box = np.ceil(np.abs(W) @ np.array(limits) + 1).astype(np.int64)
    grids = np.meshgrid(*[np.arange(-b, b + 1) for b in box], indexing="ij")
    cand = np.stack([g.ravel() for g in grids], axis=1)
    vals = cand @ emb.T  # (N, d) complex
    mods = np.abs(vals[:, blocks])
    lim = np.array([float(x) for x in bounds])
    slack = 1e-9 * (1 + lim)
    inside = np.all(mods <= lim - slack, axis=1)
    maybe = np.all(mods <= lim + slack, axis=1) & ~inside
    chosen = [tuple(int(x) for x in row) for row in cand[inside]]
    ambiguous = 0
    for row in cand[maybe]:
        c = [int(x) for x in row]
        verdict, unsure = _certified_inside(c, B, E, blocks, bounds, sys)
        ambiguous += unsure
        if verdict:
            chosen.append(tuple(c))
    if audit is not None:
        audit["ambiguous"] = ambiguous
    if chosen and ambiguous > AMBIGUOUS_FRACTION * len(chosen) and ambiguous > 1:
        raise FieldError(f"{ambiguous} boundary points could not be certified")
    return PointSet.of(chosen, d)


def _certified_inside(c, B, E, blocks, bounds, sys, radius_schedule=(1e-30, 1e-60)) -> tuple[bool, int]:
    coeffs = la.mat_vec(B, c)
    if all(x == 0 for x in coeffs[1:]):
        q = abs(coeffs[0])
        return all(q <= b for b in bounds), 0
    for radius in radius_schedule:
        if radius != radius_schedule[0]:
            E = certified_roots(sys.field.poly, target_radius=radius)
        images = embed_coeffs(coeffs, E)
        decided, ok = True, True
        for b, i in enumerate(blocks):
            iv = images[i].abs_interval(E.bits + 16)
            if iv.hi <= bounds[b]:
                continue
            if iv.lo > bounds[b]:
                ok = False
                continue
            decided = False
        if decided:
            return ok, 0
    mids = [images[i].abs_interval(E.bits + 16).mid for i in blocks]
    return all(m <= b for m, b in zip(mids, bounds)), 1


def ratio_experiment(sys: DilateSystem, basis: IntegralBasis, n_schedule: Sequence[int], radii=None, width: float = 1e-10, cap: int = DEFAULT_CAP) -> list[RatioReport]:
    """Measured |A + lambda_1 A + ...| / |A| for the extremal sets at each n."""
    from .dilate_const import h_constant

    h = h_constant(sys, width).h
    out = []
    for n in n_schedule:
        audit: dict = {}
        pts = extremal_set(sys, basis, n, radii, audit)
        size = field_sumset_coords(pts, sys, basis, cap)
        margin = size - ceil(h.lo * len(pts))
        out.append(RatioReport(n, len(pts), size, Fraction(size, len(pts)), h, margin, audit.get("ambiguous", 0)))
    return out
