"""The acceptance checks, one function per criterion, shared by the test suite and ``selftest``."""

from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import mpmath
import numpy as np

from . import lattice_density as ldm
from .dilate_const import h_constant
from .exactalg.lattice import coset_reps, hnf, lattice_intersect, standard_lattice
from .matrix_analysis import Decision, MatrixFamily, companion, coprime, h_matrices, irreducible, pre_commuting, recover_dilates
from .numfield import DilateSystem, denominator_ideal, denominator_norm, quadratic_basis, rational_basis
from .sumset_engine import PointSet, linear_sumset, naive_linear_sumset, ratio_experiment
from .symmetrize import Block, EigenStructure, rasterize, verify_cts_bound

SEED = 20240601

SEC11 = [
    [[0, 1, 0], [-1, 0, 0], [0, 0, 0]],
    [[0, 0, 1], [0, 0, 0], [-1, 0, 0]],
    [[0, 0, 0], [0, 0, 1], [0, -1, 0]],
]


@dataclass
class Outcome:
    number: int
    title: str
    passed: bool
    seconds: float = 0.0
    limit: float = 0.0
    details: dict = field(default_factory=dict)

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"{tag} criterion {self.number:>2}: {self.title} ({self.seconds:.2f}s, limit {self.limit:g}s)"


def _timed(number: int, title: str, limit: float, body: Callable[[dict], bool]) -> Outcome:
    details: dict = {}
    t0 = time.perf_counter()
    try:
        ok = bool(body(details))
    except Exception as exc:  # reported as a failure, never swallowed silently
        details["error"] = f"{type(exc).__name__}: {exc}"
        ok = False
    dt = time.perf_counter() - t0
    return Outcome(number, title, ok and dt < limit, dt, limit, details)


# ---------------------------------------------------------------------------
# random generators


def random_hnf(rng: random.Random, d: int, max_index: int) -> list[list[int]]:
    """Columns of a random lower-triangular integer basis with determinant <= max_index."""
    while True:
        diag = [rng.randint(1, max_index) for _ in range(d)]
        if math.prod(diag) <= max_index:
            break
    cols = []
    for j in range(d):
        col = [0] * d
        col[j] = diag[j]
        for i in range(j + 1, d):
            col[i] = rng.randrange(diag[i])
        cols.append(col)
    return cols


def _mat_cols(basis_cols, h_cols):
    d = len(basis_cols)
    return [[sum(basis_cols[t][i] * hc[t] for t in range(d)) for i in range(d)] for hc in h_cols]


def random_flag(rng: random.Random, d: int, k: int, max_index: int = 60) -> ldm.Flag:
    """Random flag L_1 <= ... <= L_k with [Z^d : L_1] <= max_index."""
    budget = max_index
    top = random_hnf(rng, d, min(budget, 3))
    budget //= hnf(top).index
    lats = [hnf(top)]
    cols = [list(c) for c in lats[0].basis]
    for _ in range(k - 1):
        step = random_hnf(rng, d, max(1, min(budget, 6)))
        budget //= hnf(step).index
        cols = _mat_cols(cols, step)
        lats.append(hnf(cols))
    return ldm.Flag.of(list(reversed(lats)))


def random_periodic(rng: random.Random, d: int, max_index: int = 60, within=None) -> ldm.PeriodicSet:
    period = hnf(random_hnf(rng, d, max_index))
    if within is not None:
        period = lattice_intersect(period, within)
    reps = coset_reps(standard_lattice(d), period)
    if within is not None:
        reps = [r for r in reps if within.contains(r)]
    size = rng.randint(1, len(reps))
    return ldm.PeriodicSet(period, frozenset(rng.sample(reps, size)))


def _lattice_vector(rng: random.Random, lat) -> tuple[int, ...]:
    coeffs = [rng.randint(-3, 3) for _ in range(lat.dim)]
    return tuple(sum(c * col[i] for c, col in zip(coeffs, lat.basis)) for i in range(lat.dim))


def _exponent(lat) -> int:
    """Smallest e with e Z^d inside the lattice."""
    for e in range(1, lat.index + 1):
        if lat.index % e == 0 and all(lat.contains([e * int(i == j) for i in range(lat.dim)]) for j in range(lat.dim)):
            return e
    return lat.index


# ---------------------------------------------------------------------------
# criteria


def criterion_1(n: int = 50, seed: int = SEED) -> Outcome:
    def body(det):
        rng = random.Random(seed)
        bad = []
        count = 0
        while count < n:
            p, q = rng.randint(-50, 50), rng.randint(1, 50)
            if p == 0 or math.gcd(p, q) != 1:
                continue
            count += 1
            res = h_constant(DilateSystem.parse("t", [f"{p}/{q}"]))
            if res.exact_rational != abs(p) + q:
                bad.append((p, q, str(res.exact_rational)))
        det["instances"] = count
        det["failures"] = bad
        return not bad

    return _timed(1, "exact rational constants |p| + |q|", 1.0, body)


SURD_CASES = [
    ("t^2-2", ["t"], lambda: 3 + 2 * mpmath.sqrt(2)),
    ("t^2-2", ["1/2*t"], lambda: 3 + 2 * mpmath.sqrt(2)),
    ("t^3-2", ["t"], lambda: (1 + mpmath.cbrt(2)) ** 3),
]


def criterion_2(width: float = 1e-10) -> Outcome:
    def body(det):
        ok = True
        rows = []
        with mpmath.workdps(60):
            for f, lam, value in SURD_CASES:
                res = h_constant(DilateSystem.parse(f, lam), width)
                v = value()
                lo, hi = res.h.lo, res.h.hi
                inside = mpmath.mpf(lo.numerator) / lo.denominator <= v <= mpmath.mpf(hi.numerator) / hi.denominator
                narrow = res.h.width < Fraction(1, 10**9)
                rows.append({"field": f, "dilates": lam, "h_lo": float(lo), "h_hi": float(hi), "width": float(res.h.width), "contains": bool(inside)})
                ok &= bool(inside) and narrow
        det["cases"] = rows
        return ok

    return _timed(2, "certified surd constants", 5.0, body)


QUADRATIC_CATALOG = [2, 3, 5, 6, 7, 10, 13, -1, -2, -3, -5, -7]


def random_dilate_system(rng: random.Random):
    """A random system over a catalog quadratic field or Q, with its integral basis."""
    if rng.random() < 0.2:
        k = rng.randint(1, 2)
        dil = []
        for _ in range(k):
            p = rng.choice([x for x in range(-12, 13) if x])
            dil.append(f"{p}/{rng.randint(1, 12)}")
        return DilateSystem.parse("t", dil), rational_basis()
    m = rng.choice(QUADRATIC_CATALOG)
    basis = quadratic_basis(m)
    K = basis.field
    k = rng.randint(1, 2)
    dil = []
    for i in range(k):
        a, b = rng.randint(-6, 6), rng.randint(-6, 6)
        if i == 0 and b == 0:
            b = rng.choice([-3, -2, -1, 1, 2, 3])
        if a == 0 and b == 0:
            a = 1
        dil.append(K.element([Fraction(a, rng.randint(1, 8)), Fraction(b, rng.randint(1, 8))]))
    return DilateSystem(K, tuple(dil)), basis


def criterion_3(n: int = 20, seed: int = SEED) -> Outcome:
    def body(det):
        rng = random.Random(seed)
        bad = []
        for _ in range(n):
            sys, basis = random_dilate_system(rng)
            a = denominator_norm(sys)
            b = denominator_ideal(sys, basis).norm()
            if a != b:
                bad.append((str(sys.field), [str(x) for x in sys.dilates], a, str(b)))
        det["instances"] = n
        det["failures"] = bad
        return not bad

    return _timed(3, "norm-form content equals denominator ideal index", 10.0, body)


def criterion_4() -> Outcome:
    def body(det):
        A1 = ldm.PeriodicSet.of(6, [0, 3])
        A2 = ldm.PeriodicSet.of(6, [0, 4])
        s12 = ldm.periodic_sumset([A1, A2], [[[2]], [[3]]])
        s21 = ldm.periodic_sumset([A2, A1], [[[2]], [[3]]])
        Z = standard_lattice(1)
        d12, d21 = ldm.density(s12, Z), ldm.density(s21, Z)
        det.update({"2A1+3A2": repr(s12), "density_12": str(d12), "2A2+3A1": repr(s21), "density_21": str(d21)})
        return (
            s12.same_set(ldm.PeriodicSet.of(6, [0]))
            and s21.same_set(ldm.PeriodicSet.of(6, [0, 2, 3, 5]))
            and d12 == Fraction(1, 6)
            and d21 == Fraction(2, 3)
        )

    return _timed(4, "periodic sumsets 2A1+3A2 and 2A2+3A1", 5.0, body)


def criterion_5() -> Outcome:
    def body(det):
        A = ldm.PeriodicSet.of(12, [0, 1, 3, 9])
        F = ldm.Flag.of([hnf([[3]]), hnf([[1]])])
        S = ldm.lattice_density(A, F)
        vol, p1, p2 = ldm.volume(S), ldm.projection(S, 1), ldm.projection(S, 2)
        det.update({"heights": [str(h) for h in S.heights], "volume": str(vol), "pi1": str(p1), "pi2": str(p2)})
        return S.heights == (Fraction(3, 4), Fraction(1, 4), Fraction(0)) and vol == Fraction(1, 3) and p1 == Fraction(3, 4) and p2 == Fraction(2, 3)

    return _timed(5, "worked lattice-density example", 5.0, body)


def _grid_points(S: ldm.StaircaseBody):
    rs = sorted({h for h in S.heights if h > 0} | {Fraction(1)})
    probes = set(rs)
    for r in rs:
        probes.add(r / 2)
        if r < 1:
            probes.add(min(Fraction(1), r + Fraction(1, 997)))
    for r in sorted(probes):
        for cell in itertools.product(*[range(1, m + 1) for m in S.grid_dims]):
            yield (r,) + tuple(Fraction(c, m) for c, m in zip(cell, S.grid_dims))


def _random_points_in(rng, S: ldm.Box, top, density: float):
    return [p for p in S.points() if top.contains(p) and rng.random() < density]


def lattice_density_suite(n: int = 200, seed: int = SEED) -> dict[str, list]:
    """Run every lattice-density property on ``n`` random instances; returns failures by property."""
    rng = random.Random(seed)
    fails: dict[str, list] = {k: [] for k in ("volume", "translation", "monotone", "compressed", "sumset", "oracle", "projection", "local_scaling", "local_sub", "local_volume")}
    for i in range(n):
        d = rng.randint(1, 2)
        k = rng.randint(1, 3)
        F = random_flag(rng, d, k)
        A = random_periodic(rng, d, 60)
        S = ldm.lattice_density(A, F)
        top = F[F.k]
        tag = (i, d, k)

        if ldm.volume(S) != ldm.density(A, top):
            fails["volume"].append(tag)

        a = _lattice_vector(rng, top)
        if ldm.lattice_density(A.translate(a), F) != S:
            fails["translation"].append(tag)

        res = sorted(A.residues)
        B = ldm.PeriodicSet(A.period, frozenset(rng.sample(res, rng.randint(1, len(res)))))
        SB = ldm.lattice_density(B, F)
        if any(x > y for x, y in zip(SB.heights, S.heights)):
            fails["monotone"].append(tag)

        width = rng.randint(1, 4)
        arr = np.array([[rng.randint(0, 9) for _ in range(width)] for _ in range(rng.randint(1, 4))], dtype=object)
        comp = ldm.compress_last_axis(arr)
        if not (S.is_compressed() and SB.is_compressed() and list(comp.sum(axis=-1)) == list(arr.sum(axis=-1)) and all(list(r) == sorted(r, reverse=True) for r in comp)):
            fails["compressed"].append(tag)

        C = random_periodic(rng, d, 30)
        SC = ldm.lattice_density(C, F)
        SAC = ldm.lattice_density(ldm.periodic_sumset([A, C], [_eye(d), _eye(d)]), F)
        for p in S.corner_points():
            for q in SC.corner_points():
                if not SAC.contains_point(tuple(max(x, y) for x, y in zip(p, q))):
                    fails["sumset"].append(tag)
                    break
            else:
                continue
            break

        if k >= 2 and math.prod(S.grid_dims) <= 12:
            for pt in _grid_points(S):
                got = ldm.ld_contains(A, F, pt)
                if got != S.contains_point(pt):
                    fails["oracle"].append(tag + ("disagree", tuple(map(str, pt))))
                    break
                if got and not ldm.check_witness(A, F, pt, ldm.ld_witness(A, F, pt)):
                    fails["oracle"].append(tag + ("witness", tuple(map(str, pt))))
                    break

        if not _projection_comparisons(rng, A, F):
            fails["projection"].append(tag)

        _local_checks(rng, F, fails, tag)
    return fails


def _eye(d):
    return [[int(i == j) for j in range(d)] for i in range(d)]


def _sub(rng, lat, max_index=4):
    step = random_hnf(rng, lat.dim, max_index)
    return hnf(_mat_cols([list(c) for c in lat.basis], step))


def _projection_comparisons(rng, A, F) -> bool:
    k = F.k
    lats = list(F.lattices)
    ok = True
    if k >= 2:  # the top lattice must stay fixed
        Fp = ldm.Flag.of([_sub(rng, lats[0])] + lats[1:])
        ok = ldm.projection(ldm.lattice_density(A, F), 1) <= ldm.projection(ldm.lattice_density(A, Fp), 1)
    for l in range(2, k + 1):
        sub = _sub(rng, lats[l - 2])
        low = [lattice_intersect(x, sub) for x in lats[: l - 2]]
        Fq = ldm.Flag.of(low + [sub] + lats[l - 1:])
        ok &= ldm.projection(ldm.lattice_density(A, F), l) >= ldm.projection(ldm.lattice_density(A, Fq), l)
    for l in range(1, k + 1):
        ok &= ldm.projection(ldm.lattice_density(A, F), l) == ldm.projection_direct(A, F, l)
    return ok


def _local_checks(rng, F, fails, tag) -> None:
    if F[1].index > 12:
        return
    d = F.dim
    e = _exponent(F[1])
    side_t = e * rng.randint(1, 2)
    side_s = side_t * rng.randint(2, 3)
    S = ldm.Box((0,) * d, side_s)
    off = tuple(rng.randrange(side_s - side_t + 1) for _ in range(d))
    T = ldm.Box(off, side_t)
    top = F[F.k]
    A = _random_points_in(rng, T, top, rng.uniform(0.2, 0.9))
    if A:
        big = ldm.local_ld(A, S, F)
        small = ldm.local_ld(A, T, F)
        if big != ldm.rescale_first_axis(small, T, S):
            fails["local_scaling"].append(tag)
    A2 = _random_points_in(rng, S, top, rng.uniform(0.2, 0.9))
    if A2:
        body_s = ldm.local_ld(A2, S, F)
        if ldm.volume(body_s) != ldm.local_volume_direct(A2, S, F):
            fails["local_volume"].append(tag)
        inside = [p for p in A2 if T.contains(p)]
        if inside:
            body_t = ldm.local_ld(A2, T, F)
            if any(ldm.projection(body_t, l) > ldm.projection(body_s, l) for l in range(2, F.k + 1)):
                fails["local_sub"].append(tag)


def criterion_6(n: int = 200, seed: int = SEED) -> Outcome:
    def body(det):
        fails = lattice_density_suite(n, seed)
        det["instances"] = n
        det["failures"] = {k: v for k, v in fails.items() if v}
        return not any(fails.values())

    return _timed(6, "lattice-density property suite", 180.0, body)


def flag_stability(n_sets: int = 50, n_max: int = 2, seed: int = SEED) -> list:
    rng = random.Random(seed)
    sys = DilateSystem.parse("t^2-2", ["1/2*t"])
    basis = quadratic_basis(2)
    flags = {n: ldm.flags_from_ideals(sys, basis, [n]) for n in range(n_max + 2)}
    bad = []
    for i in range(n_sets):
        A = random_periodic(rng, 2, 40)
        for n in range(n_max + 1):
            fl, nxt = flags[n], flags[n + 1]
            L0, L1 = fl.dilate_matrices[0], fl.dilate_matrices[1]
            p1 = ldm.projection(ldm.lattice_density(A, fl.F), 1)
            q1 = ldm.projection(ldm.lattice_density(A.image(L0), nxt.G), 1)
            if p1 != q1:
                bad.append(("pi1", i, n, str(p1), str(q1)))
            p2 = ldm.projection(ldm.lattice_density(A, fl.F), 2)
            q2 = ldm.projection(ldm.lattice_density(A.image(L1), fl.G), 2)
            if p2 > q2:
                bad.append(("pi2", i, n, str(p2), str(q2)))
    return bad


def criterion_7(n_sets: int = 50, seed: int = SEED) -> Outcome:
    def body(det):
        bad = flag_stability(n_sets, 2, seed)
        det["instances"] = n_sets * 3
        det["failures"] = bad
        return not bad

    return _timed(7, "flag stability over Z[sqrt 2] with 1/sqrt 2", 60.0, body)


def criterion_8(n_vectors: int = 500, seed: int = SEED) -> Outcome:
    def body(det):
        sec = MatrixFamily.of(SEC11)
        pc, irr, cop = pre_commuting(sec), irreducible(sec, seed), coprime(sec, seed)
        det["sec11"] = {"pre_commuting": pc.value, "irreducible": irr.decision.value, "coprime": cop.coprime, "coprime_certified": cop.certified}
        ok = pc is Decision.FALSE and irr.decision is Decision.TRUE and cop.coprime is True

        I2 = [[1, 0], [0, 1]]
        C = companion([-2, 0, 1])
        fam = MatrixFamily.of([I2, C])
        h = h_matrices(fam, 1e-10, seed)
        with mpmath.workdps(60):
            target = 3 + 2 * mpmath.sqrt(2)
            inside = mpmath.mpf(h.h.lo.numerator) / h.h.lo.denominator <= target <= mpmath.mpf(h.h.hi.numerator) / h.h.hi.denominator
        cop2 = coprime(fam, seed)
        det["companion"] = {"h_lo": float(h.h.lo), "h_hi": float(h.h.hi), "contains": bool(inside), "coprime": cop2.coprime}
        ok &= bool(inside) and cop2.coprime is True

        fam2 = MatrixFamily.of([[[2, 0], [0, 2]], [[2 * x for x in row] for row in C]])
        cop3 = coprime(fam2, seed)
        det["scaled"] = {"coprime": cop3.coprime, "certified": cop3.certified}
        ok &= cop3.coprime is False

        rng = random.Random(seed)
        rec = recover_dilates(fam, seed)
        vecs = [[Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**3)) for _ in range(2)] for _ in range(n_vectors)]
        det["recovery_vectors"] = n_vectors
        det["recovered"] = {"field": str(rec.system.field), "dilates": [str(x) for x in rec.system.dilates]}
        ok &= rec.verify(fam, vecs)
        return ok

    return _timed(8, "matrix-family analysis", 30.0, body)


def criterion_9(schedule=(10, 20, 40)) -> Outcome:
    def body(det):
        sys = DilateSystem.parse("t^2-2", ["t"])
        basis = quadratic_basis(2)
        rows = ratio_experiment(sys, basis, schedule)
        H = (rows[0].h_reference.lo + rows[0].h_reference.hi) / 2
        gaps = [abs(r.ratio - H) for r in rows]
        monotone = all(b <= a for a, b in zip(gaps, gaps[1:]))
        close = abs(float(rows[-1].ratio) - 5.8284271) <= 0.1 * 5.8284271
        h_lo = rows[0].h_reference.lo
        lower = all(r.size_sum >= float(h_lo) * r.size_a - 3 * float(h_lo) * math.sqrt(r.size_a) for r in rows)
        det["rows"] = [r.to_json() for r in rows]
        det.update({"gaps_nonincreasing": monotone, "final_within_10pct": close, "lower_bound_holds": lower})
        return monotone and close and lower

    return _timed(9, "extremal-set convergence for sqrt 2", 60.0, body)


def random_diagonal_instance(rng: random.Random, h: Fraction):
    d = rng.randint(1, 3)
    k = rng.randint(1, 2)
    boxes = []
    for _ in range(rng.randint(1, 3)):
        lo = [rng.randint(0, 4) / 4 for _ in range(d)]
        hi = [x + rng.randint(1, 4) / 4 for x in lo]
        boxes.append({"box": [lo, hi]})
    A = rasterize({"union": boxes}, h)
    blocks = []
    for _ in range(d):
        scales = [1.0] + [rng.choice([-1, 1]) * rng.uniform(0.2, 2.0) for _ in range(k)]
        blocks.append(Block(1, tuple(scales)))
    return A, EigenStructure(tuple(blocks))


def criterion_10(n: int = 50, seed: int = SEED) -> Outcome:
    def body(det):
        ok = True
        A = rasterize({"box": [[0], [1]]}, Fraction(1, 128))
        rep = verify_cts_bound(A, EigenStructure((Block(1, (1.0, 2.0)),)))
        exact = rep.passed and rep.measured == 3.0 and rep.bound == 3.0
        det["interval"] = rep.to_json()
        ok &= exact

        disk = rasterize({"disk": {"center": [0, 0], "radius": 1}}, Fraction(1, 256))
        r, theta = 0.5, 1.0
        rep = verify_cts_bound(disk, EigenStructure((Block(2, (1.0, r), (0.0, theta)),)))
        rel = abs(rep.measured / ((1 + r) ** 2 * math.pi) - 1)
        det["disk"] = dict(rep.to_json(), relative_error=rel, grid=list(disk.grid.shape))
        ok &= rep.passed and rel < 0.02

        rng = random.Random(seed)
        fails = []
        for i in range(n):
            A, E = random_diagonal_instance(rng, Fraction(1, 16))
            rep = verify_cts_bound(A, E)
            if not rep.passed:
                fails.append((i, rep.to_json()))
        det["random_failures"] = fails
        return ok and not fails

    return _timed(10, "continuous sum-of-dilates verifier", 120.0, body)


def criterion_11(n: int = 200, seed: int = SEED) -> Outcome:
    def body(det):
        rng = random.Random(seed)
        bad = []
        for i in range(n):
            d_in = rng.randint(1, 3)
            d_out = d_in if rng.random() < 0.8 else rng.randint(1, 3)
            k = rng.randint(1, 3)
            sets = [PointSet.of([[rng.randint(-6, 6) for _ in range(d_in)] for _ in range(rng.randint(1, 9))]) for _ in range(k + 1)]
            mats = [[[rng.randint(-3, 3) for _ in range(d_in)] for _ in range(d_out)] for _ in range(k + 1)]
            if linear_sumset(sets, mats).points != naive_linear_sumset(sets, mats).points:
                bad.append(i)
        det["instances"] = n
        det["failures"] = bad
        return not bad

    return _timed(11, "sumset engine against naive enumeration", 60.0, body)


def _dense_set(rng: random.Random, N: int) -> list[tuple[int]]:
    pts = []
    x = 0
    while x < N:
        run = rng.randint(1, N // 8)
        p = rng.uniform(0.5, 1.0)
        mod = rng.choice([1, 1, 2, 3])
        for y in range(x, min(N, x + run)):
            if (y % mod == 0 or rng.random() < 0.3) and rng.random() < p:
                pts.append((y,))
        x += run
    return pts


REGULARITY_FAMILIES = {
    "1/2": (DilateSystem.parse("t", ["1/2"]), 256, 2),
    "2/3": (DilateSystem.parse("t", ["2/3"]), 243, 3),
}


def regularity_instances(n: int = 20, seed: int = SEED):
    rng = random.Random(seed)
    basis = rational_basis()
    for i in range(n):
        name = "1/2" if i % 2 == 0 else "2/3"
        sys, N, M = REGULARITY_FAMILIES[name]
        A = _dense_set(rng, N)
        family = lambda nv, sys=sys: ldm.flags_from_ideals(sys, basis, nv).F
        yield name, A, N, M, family


def criterion_12(n: int = 20, seed: int = SEED, delta=Fraction(1, 5)) -> Outcome:
    def body(det):
        bad = []
        levels = []
        for name, A, N, M, family in regularity_instances(n, seed):
            res = ldm.regular_decomposition(A, N, family, M, delta, 1)
            keep, regular = ldm.check_decomposition(res, A, family, M, delta, 1)
            levels.append(res.r)
            if not (keep and regular):
                bad.append((name, len(A), res.r, keep, regular))
        det["levels"] = levels
        det["failures"] = bad
        return not bad

    return _timed(12, "regular cube decomposition guarantees", 60.0, body)


CRITERIA: dict[int, Callable[[], Outcome]] = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
    10: criterion_10,
    11: criterion_11,
    12: criterion_12,
}


def run_all(only=None) -> list[Outcome]:
    return [CRITERIA[i]() for i in sorted(CRITERIA) if only is None or i in only]


__all__ = ["CRITERIA", "Outcome", "run_all", "lattice_density_suite", "flag_stability", "random_flag", "random_periodic", "random_dilate_system"]
