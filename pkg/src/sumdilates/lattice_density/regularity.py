"""Desk-scale search for regular cube decompositions of a dense finite set."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from ..exactalg.lattice import scalar_lattice
from .local import Box, local_ld
from .periodic import PeriodicSet
from .staircase import Flag, projection, projection_direct

FlagFamily = Callable[[tuple[int, ...]], Flag]


class RegularityError(RuntimeError):
    pass


@dataclass
class RegularityResult:
    r: int
    side: int
    cubes: list[Box]
    retained: frozenset[tuple[int, ...]]
    energies: list[Fraction] = field(default_factory=list)
    level_bound: Fraction | None = None  # M^d / (eps delta^2)

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "side": self.side,
            "cubes": [list(c.origin) for c in self.cubes],
            "retained": len(self.retained),
            "energies": [str(e) for e in self.energies],
            "level_bound": str(self.level_bound) if self.level_bound is not None else None,
        }


def _n_vector(l: int, value: int, tail: Sequence[int]) -> tuple[int, ...]:
    return (0,) * (l - 1) + (value,) + tuple(tail)


def _tileable(side: int, F: Flag) -> bool:
    return side > 0 and all(F[1].contains([side * int(i == j) for i in range(F.dim)]) for j in range(F.dim))


def _proj(A, cube: Box, F: Flag, l: int) -> Fraction:
    return projection(local_ld(A, cube, F), l + 1)


def regular_decomposition(
    A: Sequence[Sequence[int]],
    N: int,
    flag_family: FlagFamily,
    M: int,
    delta: Fraction | float,
    l: int,
    n_tail: Sequence[int] = (),
    N_prime: int | None = None,
    r_max: int | None = None,
) -> RegularityResult:
    """Smallest r whose (M, delta, r, n_tail)-regular cubes of side N'/M^r keep (1 - delta)|A|.

    Cubes are tested level by level; the level bound M^d/(eps delta^2) is
    reported but not used to stop the search, which ends at the first level
    meeting the retention guarantee or when cubes stop being tileable.
    """
    pts = frozenset(tuple(int(x) for x in p) for p in A)
    if not pts:
        raise RegularityError("empty set")
    d = len(next(iter(pts)))
    if any(not all(0 <= x < N for x in p) for p in pts):
        raise RegularityError("points outside [0, N)^d")
    Np = N if N_prime is None else N_prime
    if N % Np:
        raise RegularityError("N' must divide N")
    delta = Fraction(delta)
    eps = Fraction(len(pts), N**d)
    bound = Fraction(M**d) / (eps * delta * delta)
    energies = []
    r = 0
    while r_max is None or r <= r_max:
        side = Np
        for _ in range(r):
            if side % M:
                raise RegularityError("divisibility failure: cube side not divisible by M")
            side //= M
        if side % M:
            raise RegularityError("divisibility failure: cube side not divisible by M")
        F_r = flag_family(_n_vector(l, r, n_tail))
        F_next = flag_family(_n_vector(l, r + 1, n_tail))
        if not (_tileable(side, F_r) and _tileable(side // M, F_next)):
            raise RegularityError(f"divisibility failure: cubes at level {r} are not tileable")
        whole = Box((0,) * d, N)
        cubes = whole.subcubes(N // side)
        regular, total = [], Fraction(0)
        kept = set()
        for P in cubes:
            local = [p for p in pts if P.contains(p)]
            p_val = _proj(local, P, F_r, l) if local else Fraction(0)
            total += p_val
            if not local or all(_proj(local, Q, F_next, l) >= (1 - delta) * p_val for Q in P.subcubes(M)):
                regular.append(P)
                kept.update(local)
        energies.append(total * Fraction(Np**d, N**d) / M ** (r * d))
        if len(kept) >= (1 - delta) * len(pts):
            return RegularityResult(r, side, regular, frozenset(kept), energies, bound)
        r += 1
    raise RegularityError("no regular level found within r_max")


def check_decomposition(result: RegularityResult, A: Sequence[Sequence[int]], flag_family: FlagFamily, M: int, delta, l: int, n_tail: Sequence[int] = ()) -> tuple[bool, bool]:
    """Re-verify retention and per-cube regularity with directly computed projections."""
    pts = frozenset(tuple(int(x) for x in p) for p in A)
    delta = Fraction(delta)
    kept = {p for p in pts if any(P.contains(p) for P in result.cubes)}
    retention = kept == set(result.retained) and len(kept) >= (1 - delta) * len(pts)
    F_r = flag_family(_n_vector(l, result.r, n_tail))
    F_next = flag_family(_n_vector(l, result.r + 1, n_tail))

    def direct(cube: Box, F: Flag) -> Fraction:
        local = [p for p in pts if cube.contains(p)]
        if not local:
            return Fraction(0)
        per = PeriodicSet(scalar_lattice(cube.dim, cube.side), frozenset(local))
        return projection_direct(per, F, l + 1)

    regular = True
    for P in result.cubes:
        p_val = direct(P, F_r)
        if any(direct(Q, F_next) < (1 - delta) * p_val for Q in P.subcubes(M)):
            regular = False
            break
    return retention, regular
