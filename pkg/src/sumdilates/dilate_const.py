"""The sharp constant N(D) * prod_i (1 + sum_l |sigma_i(lambda_l)|)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .embeddings import RealInterval, certified_archimedean
from .numfield import DilateSystem, FieldError, IntegralBasis, denominator_norm, generates_field


@dataclass(frozen=True)
class HResult:
    ideal_norm_factor: int
    archimedean: RealInterval
    h: RealInterval
    exact_rational: Fraction | None = None

    def contains(self, x) -> bool:
        return self.h.contains(x)

    def to_json(self) -> dict:
        out = {
            "ideal_norm_factor": self.ideal_norm_factor,
            "archimedean_lo": float(self.archimedean.lo),
            "archimedean_hi": float(self.archimedean.hi),
            "h_lo": float(self.h.lo),
            "h_hi": float(self.h.hi),
        }
        if self.exact_rational is not None:
            out["h_exact"] = str(self.exact_rational)
        return out


def h_from_parts(norm_factor: int, sys: DilateSystem, width: float) -> HResult:
    """norm_factor times the certified archimedean product of ``sys``."""
    if sys.d == 1:
        arch = Fraction(1)
        for lam in sys.dilates:
            arch += abs(lam.coeffs[0])
        exact = norm_factor * arch
        return HResult(norm_factor, RealInterval.point(arch), RealInterval.point(exact), exact)
    arch, _ = certified_archimedean(sys, width / max(norm_factor, 1))
    h = RealInterval(arch.lo * norm_factor, arch.hi * norm_factor)
    return HResult(norm_factor, arch, h, None)


def h_constant(sys: DilateSystem, width: float = 1e-10, check_generation: bool = True) -> HResult:
    """Certified interval for the sharp sum-of-dilates constant of ``sys``."""
    if check_generation and not sys.trusted and not generates_field(sys):
        raise FieldError("dilates generate proper subfield")
    return h_from_parts(denominator_norm(sys), sys, width)


def h_lower_witness(sys: DilateSystem, basis: IntegralBasis, n: int, radii=None):
    """The discretized equality body A and its measured sum-of-dilates ratio."""
    from .sumset_engine import extremal_set, field_sumset_coords

    pts = extremal_set(sys, basis, n, radii)
    size = field_sumset_coords(pts, sys, basis)
    return pts, Fraction(size, len(pts))
