"""Certified complex embeddings of a number field.

Roots of the defining polynomial are approximated (numpy seeds refined by
Newton iteration in mpmath) and then certified a posteriori: the disk of
radius d*|f(z)|/|f'(z)| around any z contains a root.  Centers are exact
dyadic rationals and every bound is evaluated in exact rational arithmetic,
so the only floating-point work is in finding good centers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Sequence

from .exactalg.poly import is_squarefree, uderiv, uprimitive, utrim

DEFAULT_START_BITS = 64
MAX_BITS = 4096


class EmbeddingError(ValueError):
    pass


class PrecisionError(RuntimeError):
    """Requested accuracy not reached; carries what was achieved."""

    def __init__(self, message: str, achieved: float | None = None, required_radius: float | None = None):
        super().__init__(message)
        self.achieved = achieved
        self.required_radius = required_radius


# ---------------------------------------------------------------------------
# exact square-root bounds and dyadic rounding


def sqrt_lower(x: Fraction, bits: int) -> Fraction:
    """A rational s <= sqrt(x), within 2^-bits of it."""
    if x <= 0:
        return Fraction(0)
    scaled = (x.numerator << (2 * bits)) // x.denominator
    return Fraction(isqrt(scaled), 1 << bits)


def sqrt_upper(x: Fraction, bits: int) -> Fraction:
    """A rational s >= sqrt(x), within 2^-bits (plus rounding) of it."""
    if x <= 0:
        return Fraction(0)
    scaled = -((-x.numerator << (2 * bits)) // x.denominator)
    r = isqrt(scaled)
    if r * r < scaled:
        r += 1
    return Fraction(r, 1 << bits)


def round_dyadic(x: Fraction, bits: int) -> Fraction:
    """Nearest multiple of 2^-bits (error at most 2^-(bits+1))."""
    num = x.numerator << bits
    q, rem = divmod(num, x.denominator)
    if 2 * rem >= x.denominator:
        q += 1
    return Fraction(q, 1 << bits)


def ceil_dyadic(x: Fraction, bits: int) -> Fraction:
    num = x.numerator << bits
    return Fraction(-((-num) // x.denominator), 1 << bits)


# ---------------------------------------------------------------------------
# certified numbers


@dataclass(frozen=True)
class RealInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("empty interval")

    @classmethod
    def point(cls, x) -> "RealInterval":
        return cls(Fraction(x), Fraction(x))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __add__(self, other):
        other = _as_interval(other)
        return RealInterval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __mul__(self, other):
        other = _as_interval(other)
        ps = [self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi]
        return RealInterval(min(ps), max(ps))

    __rmul__ = __mul__

    def contains(self, x) -> bool:
        return self.lo <= Fraction(x) <= self.hi

    def contains_float(self, x: float, slack: float = 0.0) -> bool:
        return float(self.lo) - slack <= x <= float(self.hi) + slack

    def overlaps(self, other: "RealInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def rounded(self, bits: int) -> "RealInterval":
        """Outward rounding to dyadic endpoints (keeps sizes bounded)."""
        lo = Fraction((self.lo.numerator << bits) // self.lo.denominator, 1 << bits)
        return RealInterval(lo, ceil_dyadic(self.hi, bits))

    def __repr__(self) -> str:
        return f"[{float(self.lo):.15g}, {float(self.hi):.15g}]"


def _as_interval(x) -> RealInterval:
    return x if isinstance(x, RealInterval) else RealInterval.point(x)


@dataclass(frozen=True)
class CertifiedComplex:
    """Closed disk {z : |z - (re + i im)| <= radius} with exact dyadic data."""

    re: Fraction
    im: Fraction
    radius: Fraction

    @classmethod
    def exact(cls, x) -> "CertifiedComplex":
        return cls(Fraction(x), Fraction(0), Fraction(0))

    @property
    def center(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __add__(self, other):
        other = _as_disk(other)
        return CertifiedComplex(self.re + other.re, self.im + other.im, self.radius + other.radius)

    __radd__ = __add__

    def mul(self, other, bits: int) -> "CertifiedComplex":
        other = _as_disk(other)
        re = self.re * other.re - self.im * other.im
        im = self.re * other.im + self.im * other.re
        r = (
            self.abs_upper(bits) * other.radius
            + other.abs_upper(bits) * self.radius
            + self.radius * other.radius
        )
        return CertifiedComplex(re, im, r).rounded(bits)

    def scale(self, c: Fraction) -> "CertifiedComplex":
        return CertifiedComplex(self.re * c, self.im * c, self.radius * abs(c))

    def rounded(self, bits: int) -> "CertifiedComplex":
        re, im = round_dyadic(self.re, bits), round_dyadic(self.im, bits)
        err = abs(re - self.re) + abs(im - self.im)
        return CertifiedComplex(re, im, ceil_dyadic(self.radius + err, bits))

    def abs_sq(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def abs_upper(self, bits: int) -> Fraction:
        return sqrt_upper(self.abs_sq(), bits)

    def abs_interval(self, bits: int) -> RealInterval:
        lo = sqrt_lower(self.abs_sq(), bits) - self.radius
        hi = sqrt_upper(self.abs_sq(), bits) + self.radius
        return RealInterval(max(lo, Fraction(0)), hi)

    def real_interval(self) -> RealInterval:
        return RealInterval(self.re - self.radius, self.re + self.radius)

    def imag_interval(self) -> RealInterval:
        return RealInterval(self.im - self.radius, self.im + self.radius)

    def disjoint(self, other: "CertifiedComplex") -> bool:
        dist_sq = (self.re - other.re) ** 2 + (self.im - other.im) ** 2
        return dist_sq > (self.radius + other.radius) ** 2

    def contains(self, z: complex, slack: float = 0.0) -> bool:
        return abs(z - self.center) <= float(self.radius) + slack

    def __repr__(self) -> str:
        return f"({float(self.re):.15g}{float(self.im):+.15g}i ± {float(self.radius):.3g})"


def _as_disk(x) -> CertifiedComplex:
    return x if isinstance(x, CertifiedComplex) else CertifiedComplex.exact(x)


@dataclass(frozen=True)
class EmbeddingData:
    poly: tuple[int, ...]
    roots: tuple[CertifiedComplex, ...]
    pairing: tuple[int, ...]
    real_mask: tuple[bool, ...]
    bits: int

    @property
    def degree(self) -> int:
        return len(self.roots)

    @property
    def max_radius(self) -> Fraction:
        return max((r.radius for r in self.roots), default=Fraction(0))


# ---------------------------------------------------------------------------
# root certification


def _complex_eval(coeffs: Sequence[int], re: Fraction, im: Fraction) -> tuple[Fraction, Fraction]:
    """Exact value of an integer polynomial at re + i*im (Horner)."""
    vr, vi = Fraction(0), Fraction(0)
    for c in reversed(coeffs):
        vr, vi = vr * re - vi * im + c, vr * im + vi * re
    return vr, vi


def _inclusion_radius(coeffs: Sequence[int], deriv: Sequence[int], re: Fraction, im: Fraction, bits: int) -> Fraction | None:
    fr, fi = _complex_eval(coeffs, re, im)
    f2 = fr * fr + fi * fi
    if f2 == 0:
        return Fraction(0)
    dr, di = _complex_eval(deriv, re, im)
    d2 = dr * dr + di * di
    if d2 == 0:
        return None
    n = len(coeffs) - 1
    return ceil_dyadic(sqrt_upper(n * n * f2 / d2, bits + 8), bits + 8)


def _refine(coeffs: Sequence[int], seeds: Sequence[complex], bits: int):
    import mpmath

    ctx = mpmath.mp.clone()
    ctx.prec = bits + 32
    poly = [ctx.mpf(c) for c in reversed(coeffs)]  # high to low for polyval
    dpoly = [ctx.mpf(c * (len(coeffs) - 1 - i)) for i, c in enumerate(poly[:-1])]
    out = []
    tol = ctx.mpf(2) ** (-bits)
    for s in seeds:
        z = ctx.mpc(s)
        for _ in range(200):
            fz = ctx.polyval(poly, z)
            dz = ctx.polyval(dpoly, z)
            if dz == 0:
                break
            step = fz / dz
            z -= step
            if abs(step) <= tol * max(1, abs(z)):
                break
        out.append(z)
    if _clustered(out, ctx):
        # Newton merged two seeds; fall back to simultaneous iteration
        out = list(ctx.polyroots(poly, maxsteps=400, extraprec=bits))
    return out


def _clustered(zs, ctx) -> bool:
    for i in range(len(zs)):
        for j in range(i):
            if abs(zs[i] - zs[j]) <= ctx.mpf(2) ** (-(ctx.prec // 2)):
                return True
    return False


def _to_dyadic(x, bits: int) -> Fraction:
    """Exact value of an mpmath real, rounded to a multiple of 2^-bits."""
    sign, man, exp, _ = x._mpf_
    value = Fraction(int(man)) * (Fraction(2) ** int(exp))
    return round_dyadic(-value if sign else value, bits)


def _certify_at(coeffs: list[int], bits: int, seeds: Sequence[complex]):
    deriv = [int(c) for c in uderiv(coeffs)]
    approx = _refine(coeffs, seeds, bits)
    d = len(coeffs) - 1
    scale = Fraction(1, 1 << max(8, bits // 2))
    real_idx, upper = [], []
    for z in approx:
        im = float(z.imag)
        re_f = _to_dyadic(z.real, bits)
        im_f = _to_dyadic(z.imag, bits)
        if abs(im) <= float(scale) * max(1.0, abs(complex(z))):
            real_idx.append((re_f, im_f))
        elif im > 0:
            upper.append((re_f, im_f))
    if len(real_idx) + 2 * len(upper) != d:
        return None
    disks: list[CertifiedComplex] = []
    pairing: list[int] = []
    real_mask: list[bool] = []
    for re_f, im_f in sorted(real_idx):
        r = _inclusion_radius(coeffs, deriv, re_f, im_f, bits)
        if r is None:
            return None
        # recenter on the real axis; the disk still contains its root
        disks.append(CertifiedComplex(re_f, Fraction(0), ceil_dyadic(r + abs(im_f), bits + 8)))
        pairing.append(len(pairing))
        real_mask.append(True)
    for re_f, im_f in sorted(upper):
        r = _inclusion_radius(coeffs, deriv, re_f, im_f, bits)
        if r is None:
            return None
        i = len(disks)
        disks.append(CertifiedComplex(re_f, im_f, r))
        disks.append(CertifiedComplex(re_f, -im_f, r))
        pairing.extend([i + 1, i])
        real_mask.extend([False, False])
    for i in range(d):
        for j in range(i):
            if not disks[i].disjoint(disks[j]):
                return None
    for i, disk in enumerate(disks):
        # a real-centered disk must be isolated from the others to certify reality;
        # a non-real disk must avoid the real axis so its conjugate is distinct
        if not real_mask[i] and abs(disk.im) <= disk.radius:
            return None
    return tuple(disks), tuple(pairing), tuple(real_mask)


def certified_roots(poly: Sequence, target_radius: float = 1e-12, start_bits: int = DEFAULT_START_BITS, max_bits: int = MAX_BITS) -> EmbeddingData:
    """Pairwise disjoint disks, one around each complex root of ``poly``."""
    import numpy as np

    coeffs = uprimitive(poly)
    d = len(coeffs) - 1
    if d < 1:
        raise EmbeddingError("polynomial must have positive degree")
    if not is_squarefree(coeffs):
        raise EmbeddingError("repeated roots")
    if d == 1:
        root = Fraction(-coeffs[0], coeffs[1])
        return EmbeddingData(tuple(coeffs), (CertifiedComplex.exact(root),), (0,), (True,), 0)
    target = Fraction(target_radius)
    seeds = [complex(z) for z in np.roots([float(c) for c in reversed(coeffs)])]
    bits = start_bits
    achieved = None
    while bits <= max_bits:
        res = _certify_at(coeffs, bits, seeds)
        if res is not None:
            disks, pairing, real_mask = res
            achieved = max(r.radius for r in disks)
            if achieved <= target:
                return EmbeddingData(tuple(coeffs), disks, pairing, real_mask, bits)
        bits *= 2
    raise PrecisionError(
        f"could not certify roots to radius {target_radius} (achieved {float(achieved) if achieved is not None else 'none'})",
        achieved=float(achieved) if achieved is not None else None,
    )


# ---------------------------------------------------------------------------
# embeddings of field elements


def embed_coeffs(coeffs: Sequence, E: EmbeddingData) -> list[CertifiedComplex]:
    """Evaluate sum coeffs[j] theta^j at every certified root (Horner in disks)."""
    bits = max(E.bits, DEFAULT_START_BITS) + 16
    cs = [Fraction(c) for c in utrim(coeffs)] or [Fraction(0)]
    out = []
    for z in E.roots:
        acc = CertifiedComplex.exact(cs[-1])
        for c in reversed(cs[:-1]):
            acc = acc.mul(z, bits) + c
        out.append(acc)
    return out


def embed(x, E: EmbeddingData) -> list[CertifiedComplex]:
    """sigma_i(x) for each root, x a FieldElement of the field defined by E.poly."""
    if tuple(x.field.poly) != tuple(E.poly):
        raise EmbeddingError("element and embeddings belong to different fields")
    return embed_coeffs(x.coeffs, E)


def archimedean_product(sys, E: EmbeddingData, width: float | None = None) -> RealInterval:
    """Interval containing prod_i (1 + sum_l |sigma_i(lambda_l)|)."""
    bits = max(E.bits, DEFAULT_START_BITS) + 16
    images = [embed(lam, E) for lam in sys.dilates]
    total = RealInterval.point(1)
    for i in range(E.degree):
        factor = RealInterval.point(1)
        for img in images:
            factor = factor + img[i].abs_interval(bits)
        total = (total * factor).rounded(bits)
    if width is not None and total.width > Fraction(width):
        raise PrecisionError(
            f"archimedean product width {float(total.width):.3g} exceeds {width}",
            achieved=float(total.width),
            required_radius=float(E.max_radius) * width / max(float(total.width), 1e-300),
        )
    return total


def certified_archimedean(sys, width: float, max_bits: int = MAX_BITS) -> tuple[RealInterval, EmbeddingData]:
    """Archimedean product of width <= ``width``, doubling precision as needed."""
    radius = min(1e-12, width / 16)
    bits = DEFAULT_START_BITS
    while True:
        E = certified_roots(sys.field.poly, target_radius=radius, start_bits=bits, max_bits=max_bits)
        try:
            return archimedean_product(sys, E, width), E
        except PrecisionError as exc:
            radius = min(radius / 2**16, exc.required_radius or radius / 2**16)
            bits = max(E.bits, bits)
            if radius < 2.0 ** (-max_bits):
                raise
