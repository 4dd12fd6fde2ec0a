"""Integer matrix families L_0, ..., L_k: structural predicates and recovery.

Decisions are exact.  Where a predicate cannot be settled by the available
procedures the answer is ``Decision.INCONCLUSIVE`` or
``Decision.UNSUPPORTED`` rather than a guess.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from .exactalg import linalg as la
from .exactalg.factor import factor_rational, is_irreducible
from .exactalg.lattice import IntegerLattice, hnf, standard_lattice
from .exactalg.poly import MultiPoly, bareiss_det, uprimitive
from .numfield import DilateSystem, FieldElement, NumberField, denominator_norm

DEFAULT_SEED = 20240601
COEFF_RANGE = 5
RETRIES = 3


class RefusalError(RuntimeError):
    """The requested quantity is not defined for this family."""


class Decision(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    INCONCLUSIVE = "inconclusive"
    UNSUPPORTED = "unsupported"

    def __bool__(self) -> bool:
        return self is Decision.TRUE


@dataclass(frozen=True)
class MatrixFamily:
    mats: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self):
        if len(self.mats) < 2:
            raise ValueError("a family needs at least two matrices")
        d = len(self.mats[0])
        for m in self.mats:
            if len(m) != d or any(len(r) != d for r in m):
                raise ValueError("matrices must be square of equal size")

    @classmethod
    def of(cls, mats: Sequence[Sequence[Sequence[int]]]) -> "MatrixFamily":
        return cls(tuple(tuple(tuple(int(x) for x in row) for row in m) for m in mats))

    @property
    def d(self) -> int:
        return len(self.mats[0])

    @property
    def k(self) -> int:
        return len(self.mats) - 1

    def rational(self) -> list[la.Matrix]:
        return [la.to_fractions(m) for m in self.mats]

    def nonzero(self) -> list[la.Matrix]:
        return [m for m in self.rational() if not la.is_zero(m)]

    def transposed(self) -> "MatrixFamily":
        return MatrixFamily.of([la.transpose(m) for m in self.mats])


def companion(poly: Sequence[int]) -> list[list[int]]:
    """Companion matrix (multiplication by y on the power basis) of a monic poly."""
    p = [int(c) for c in poly]
    if p[-1] != 1:
        raise ValueError("companion matrix needs a monic polynomial")
    d = len(p) - 1
    m = [[0] * d for _ in range(d)]
    for i in range(1, d):
        m[i][i - 1] = 1
    for i in range(d):
        m[i][d - 1] = -p[i]
    return m


# ---------------------------------------------------------------------------
# determinant form


def _variables(k: int) -> tuple[str, ...]:
    return tuple(f"x{i}" for i in range(k + 1))


def _laplace(m: list[list[MultiPoly]]) -> MultiPoly:
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = MultiPoly(m[0][0].variables)
    for j in range(n):
        if m[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * _laplace(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def det_form(fam: MatrixFamily) -> MultiPoly:
    """det(x0 L0 + ... + xk Lk) as an exact polynomial."""
    xs = _variables(fam.k)
    gens = [MultiPoly.var(xs, x) for x in xs]
    entries = [
        [sum((g * m[i][j] for g, m in zip(gens, fam.mats) if m[i][j]), MultiPoly(xs)) for j in range(fam.d)]
        for i in range(fam.d)
    ]
    if fam.d <= 4:
        return _laplace(entries)
    return bareiss_det(entries)


# ---------------------------------------------------------------------------
# invertible combinations and pre-commutativity


@dataclass(frozen=True)
class InvertibleCombination:
    coeffs: tuple[int, ...]
    matrix: la.Matrix
    member: int | None  # index when the combination is a single family member


def invertible_combination(fam: MatrixFamily, G: MultiPoly | None = None) -> InvertibleCombination | None:
    """Smallest-index invertible member, else a small integer point where G != 0."""
    mats = fam.rational()
    for i, m in enumerate(mats):
        if la.det(m) != 0:
            coeffs = tuple(int(j == i) for j in range(len(mats)))
            return InvertibleCombination(coeffs, m, i)
    G = det_form(fam) if G is None else G
    if G.is_zero():
        return None
    n = len(mats)
    bound = fam.d + 1
    points = sorted(itertools.product(range(bound), repeat=n), key=lambda p: (sum(p), p))
    for p in points:
        if G.evaluate(list(p)) != 0:
            return InvertibleCombination(tuple(p), la.lin_comb(p, mats), None)
    raise AssertionError("nonzero form vanished on a full grid")


def _normalized(fam: MatrixFamily, base: InvertibleCombination) -> list[la.Matrix]:
    inv = la.inverse(base.matrix)
    return [la.mat_mul(inv, m) for m in fam.nonzero()]


def pre_commuting(fam: MatrixFamily) -> Decision:
    """Whether P L_0, ..., P L_k pairwise commute for some invertible rational P.

    With an invertible combination L of the family, P exists iff the
    matrices L^-1 L_i pairwise commute.  When every combination is singular
    the predicate is only decided for irreducible families, which can never be
    pre-commuting in that case.
    """
    if not fam.nonzero():
        return Decision.UNSUPPORTED
    base = invertible_combination(fam)
    if base is not None:
        ms = _normalized(fam, base)
        ok = all(la.commutes(a, b) for a, b in itertools.combinations(ms, 2))
        return Decision.TRUE if ok else Decision.FALSE
    if irreducible(fam).decision is Decision.TRUE:
        return Decision.FALSE
    return Decision.UNSUPPORTED


# ---------------------------------------------------------------------------
# irreducibility


@dataclass(frozen=True)
class IrreducibilityResult:
    decision: Decision
    method: str
    witness: tuple[la.Matrix, la.Matrix] | None = None  # bases (as column lists) of U and V

    def __bool__(self) -> bool:
        return self.decision is Decision.TRUE


def spin(vectors: Sequence[Sequence[Fraction]], gens: Sequence[la.Matrix]) -> la.Matrix:
    """Basis of the smallest subspace containing ``vectors`` and stable under ``gens``."""
    basis: la.Matrix = []
    queue = [list(v) for v in vectors]
    while queue:
        v = queue.pop()
        cand = la.span_basis(basis + [v]) if basis else la.span_basis([v])
        if len(cand) > len(basis):
            basis = cand
            queue.extend(la.mat_vec(g, v) for g in gens)
    return basis


def check_witness(fam: MatrixFamily, U: la.Matrix, V: la.Matrix) -> bool:
    """U, V proper nonzero subspaces of equal dimension with L_i U inside V."""
    m = len(U)
    if not 0 < m < fam.d or la.rank(U) != m or la.rank(V) != m or len(V) != m:
        return False
    for mat in fam.rational():
        for u in U:
            if la.rank(V + [la.mat_vec(mat, u)]) != m:
                return False
    return True


def _complete_to_dim(vectors: la.Matrix, m: int, d: int) -> la.Matrix:
    basis = la.span_basis(vectors) if vectors else []
    for i in range(d):
        if len(basis) >= m:
            break
        e = [Fraction(int(j == i)) for j in range(d)]
        cand = la.span_basis(basis + [e])
        if len(cand) > len(basis):
            basis = cand
    return basis


def _eval_upoly_matrix(p: Sequence[Fraction], m: la.Matrix) -> la.Matrix:
    return la.mat_pow_combination(list(p), m)


def _random_algebra_element(gens: Sequence[la.Matrix], rng: random.Random) -> la.Matrix:
    coeffs = [rng.randint(-COEFF_RANGE, COEFF_RANGE) for _ in gens]
    theta = la.lin_comb(coeffs, gens)
    if len(gens) > 1:
        a, b = rng.sample(range(len(gens)), 2)
        theta = la.mat_add(theta, la.mat_mul(gens[a], gens[b]))
    return theta


def _irreducible_via_spinning(fam: MatrixFamily, base: InvertibleCombination, seed: int) -> IrreducibilityResult:
    d = fam.d
    gens = _normalized(fam, base)
    gens_t = [la.transpose(g) for g in gens]
    rng = random.Random(seed)
    for _ in range(4 * RETRIES):
        theta = _random_algebra_element(gens, rng)
        chi = la.charpoly(theta)
        for p, _mult in factor_rational(chi):
            n = _eval_upoly_matrix(p, theta)
            ker = la.nullspace(n)
            if not ker:
                continue
            S = spin([ker[0]], gens)
            if len(S) < d:
                U = S
                V = [la.mat_vec(base.matrix, u) for u in U]
                return IrreducibilityResult(Decision.FALSE, "spinning", (U, V))
            ker_t = la.nullspace(la.transpose(n))
            W = spin([ker_t[0]], gens_t)
            if len(W) < d:
                U = la.nullspace(W)  # vectors orthogonal to W
                V = [la.mat_vec(base.matrix, u) for u in U]
                return IrreducibilityResult(Decision.FALSE, "spinning", (U, V))
            if len(ker) == len(p) - 1:
                return IrreducibilityResult(Decision.TRUE, "spinning")
    return IrreducibilityResult(Decision.INCONCLUSIVE, "spinning")


def _chart_equations(mats: Sequence[la.Matrix], d: int, m: int, rows: Sequence[int]):
    import sympy

    others = [r for r in range(d) if r not in rows]
    xs = sympy.symbols(f"u0:{m * (d - m)}")
    U = sympy.zeros(d, m)
    for j, r in enumerate(rows):
        U[r, j] = 1
    for i, r in enumerate(others):
        for j in range(m):
            U[r, j] = xs[i * m + j]
    blocks = [sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in mat]) * U for mat in mats]
    big = sympy.Matrix.hstack(*blocks)
    eqs = []
    for rsel in itertools.combinations(range(d), m + 1):
        for csel in itertools.combinations(range(big.shape[1]), m + 1):
            minor = sympy.expand(big.extract(list(rsel), list(csel)).det())
            if minor != 0:
                eqs.append(minor)
    return xs, U, eqs


def _irreducible_via_groebner(fam: MatrixFamily) -> IrreducibilityResult:
    """Decide the (U, V) condition by Groebner bases over every Grassmannian chart."""
    import sympy

    d = fam.d
    undecided = False
    for m_full in range(1, d):
        if m_full <= d // 2:
            src, m, transposed = fam, m_full, False
        else:
            src, m, transposed = fam.transposed(), d - m_full, True
        mats = src.rational()
        for rows in itertools.combinations(range(d), m):
            xs, U, eqs = _chart_equations(mats, d, m, rows)
            if not eqs:
                sol = {x: 0 for x in xs}
            else:
                gb = sympy.groebner(eqs, *xs, order="grevlex", domain="QQ")
                if list(gb.exprs) == [1]:
                    continue
                sols = sympy.solve(list(gb.exprs), xs, dict=True)
                sol = None
                for s in sols:
                    full = {x: s.get(x, x) for x in xs}
                    full = {x: sympy.sympify(v).subs({y: 0 for y in xs}) for x, v in full.items()}
                    if all(v.is_rational for v in full.values()):
                        sol = full
                        break
                if sol is None:
                    undecided = True
                    continue
            Us = U.subs(sol)
            U_cols = [[Fraction(int(sympy.fraction(Us[i, j])[0]), int(sympy.fraction(Us[i, j])[1])) for i in range(d)] for j in range(m)]
            images = [la.mat_vec(mat, u) for mat in mats for u in U_cols]
            V_cols = _complete_to_dim(images, m, d)
            if transposed:
                # L_i^T U subset V  <=>  L_i V^perp subset U^perp
                U_cols, V_cols = la.nullspace(V_cols), la.nullspace(U_cols)
            if check_witness(fam, U_cols, V_cols):
                return IrreducibilityResult(Decision.FALSE, "groebner", (U_cols, V_cols))
            undecided = True
    if undecided:
        return IrreducibilityResult(Decision.INCONCLUSIVE, "groebner")
    return IrreducibilityResult(Decision.TRUE, "groebner")


def irreducible(fam: MatrixFamily, seed: int = DEFAULT_SEED, groebner_max_dim: int = 4) -> IrreducibilityResult:
    """No proper nonzero U, V of equal dimension with L_i U inside V for all i."""
    d = fam.d
    if not fam.nonzero():
        return IrreducibilityResult(Decision.FALSE, "zero family", ([[Fraction(1)] + [Fraction(0)] * (d - 1)], [[Fraction(1)] + [Fraction(0)] * (d - 1)]) if d > 1 else None)
    if d == 1:
        return IrreducibilityResult(Decision.TRUE, "dimension one")
    base = invertible_combination(fam)
    if base is not None:
        return _irreducible_via_spinning(fam, base, seed)
    if d <= groebner_max_dim:
        return _irreducible_via_groebner(fam)
    return IrreducibilityResult(Decision.INCONCLUSIVE, "singular family above Groebner limit")


# ---------------------------------------------------------------------------
# recovery of the field and dilates


@dataclass(frozen=True)
class Recovery:
    system: DilateSystem
    phi: la.Matrix  # columns: images of 1, theta, ..., theta^(d-1)
    base_index: int
    dilate_indices: tuple[int, ...]
    generic_coeffs: tuple[int, ...]

    def verify(self, fam: MatrixFamily, vectors: Sequence[Sequence[Fraction]]) -> bool:
        """L_b^-1 L_l Phi(x) == Phi(lambda_l x) for every given coordinate vector x."""
        inv = la.inverse(fam.rational()[self.base_index])
        for l, lam in zip(self.dilate_indices, self.system.dilates):
            m = la.mat_mul(inv, fam.rational()[l])
            mult = lam.mult_matrix()
            for x in vectors:
                lhs = la.mat_vec(m, la.mat_vec(self.phi, x))
                rhs = la.mat_vec(self.phi, la.mat_vec(mult, x))
                if lhs != rhs:
                    return False
        return True


def recover_dilates(fam: MatrixFamily, seed: int = DEFAULT_SEED) -> Recovery:
    """The field K, dilates lambda_l and coordinate map Phi realizing the family."""
    mats = fam.rational()
    base_index = next((i for i, m in enumerate(mats) if la.det(m) != 0), None)
    if base_index is None:
        raise RefusalError("no invertible family member")
    if pre_commuting(fam) is not Decision.TRUE:
        raise RefusalError("family is not pre-commuting")
    inv = la.inverse(mats[base_index])
    idx = tuple(i for i in range(len(mats)) if i != base_index and not la.is_zero(mats[i]))
    if not idx:
        raise RefusalError("family has a single nonzero member")
    ms = [la.mat_mul(inv, mats[i]) for i in idx]
    d = fam.d
    if d == 1:
        K = NumberField((0, 1))
        lams = tuple(K.rational(m[0][0]) for m in ms)
        return Recovery(DilateSystem(K, lams, trusted=True), [[Fraction(1)]], base_index, idx, (1,))
    rng = random.Random(seed)
    # single members first, so that a member with irreducible char poly becomes theta
    units = [tuple(int(i == j) for i in range(len(ms))) for j in range(len(ms))]
    randoms = [tuple(rng.randint(-COEFF_RANGE, COEFF_RANGE) for _ in ms) for _ in range(RETRIES * 4)]
    chosen = None
    for c in units + randoms:
        M = la.lin_comb(c, ms)
        chi = la.charpoly(M)
        if is_irreducible(chi) is True:
            chosen = (c, M, chi)
            break
    if chosen is None:
        raise RefusalError("no generic combination with irreducible characteristic polynomial")
    c, M, chi = chosen
    powers = [la.identity(d)]
    for _ in range(d - 1):
        powers.append(la.mat_mul(powers[-1], M))
    # columns of the linear system: flattened powers
    system = la.transpose([[x for row in p for x in row] for p in powers])
    K = NumberField(tuple(uprimitive(chi)))
    lams = []
    for m in ms:
        g = la.solve(system, [x for row in m for x in row])
        if g is None:
            raise RefusalError("a family member is not a polynomial in the generic combination")
        lams.append(FieldElement(K, tuple(g)))
    v = [Fraction(int(i == 0)) for i in range(d)]
    cols = [v]
    for _ in range(d - 1):
        cols.append(la.mat_vec(M, cols[-1]))
    phi = la.transpose(cols)
    rec = Recovery(DilateSystem(K, tuple(lams), trusted=True), phi, base_index, idx, c)
    basis_vectors = [[Fraction(int(i == j)) for i in range(d)] for j in range(d)]
    if not rec.verify(fam, basis_vectors):
        raise AssertionError("recovered dilates fail the verification identity")
    return rec


# ---------------------------------------------------------------------------
# coprimeness


@dataclass(frozen=True)
class CoprimeResult:
    coprime: bool
    certified: bool
    method: str
    witness: tuple | None = None  # (P, Q) rational matrices when not coprime
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.coprime


def _lattice_basis_matrix(lat: IntegerLattice) -> la.Matrix:
    return la.transpose([[Fraction(x) for x in c] for c in lat.basis])


def _image_sum(mats: Sequence[Sequence[Sequence[int]]], cols: Sequence[Sequence[int]]) -> IntegerLattice | None:
    gens = [[sum(int(m[i][j]) * c[j] for j in range(len(c))) for i in range(len(m))] for m in mats for c in cols]
    try:
        return hnf(gens)
    except ValueError:
        return None


def _rank_deficient_witness(mats, d: int):
    """P = diag(1/2, 1, ..., 1) U with the first row of U killing every image."""
    from .numfield import _unimodular_with_first_column

    rows = [[Fraction(m[i][j]) for i in range(d)] for m in mats for j in range(d)]
    y = la.nullspace(rows)[0]
    den = la.common_denominator(y)
    yi = [int(x * den) for x in y]
    g = 0
    for x in yi:
        g = gcd(g, x)
    yi = [x // g for x in yi]
    U = la.transpose(_unimodular_with_first_column(yi))
    P = la.to_fractions(U)
    P[0] = [x / 2 for x in P[0]]
    return (P, la.identity(d))


def _non_coprime_witness(lam: IntegerLattice, image: IntegerLattice | None, mats, d: int):
    if image is None:
        return _rank_deficient_witness(mats, d)
    Q = _lattice_basis_matrix(lam)
    P = la.inverse(_lattice_basis_matrix(image))
    return (P, Q)


def check_coprime_witness(fam: MatrixFamily, P: la.Matrix, Q: la.Matrix) -> bool:
    """P L_i Q integral for all i and 0 < |det P det Q| < 1."""
    dd = abs(la.det(P) * la.det(Q))
    if not 0 < dd < 1:
        return False
    return all(x.denominator == 1 for m in fam.rational() for row in la.mat_mul(la.mat_mul(P, m), Q) for x in row)


def _local_sublattices(d: int, p: int, e: int):
    """HNF bases of all lattices between p^e Z^d and Z^d."""
    diag_choices = itertools.product(range(e + 1), repeat=d)
    for exps in diag_choices:
        diag = [p**a for a in exps]
        slots = [(i, j) for j in range(d) for i in range(j + 1, d)]
        ranges = [range(diag[i]) for (i, j) in slots]
        for offs in itertools.product(*ranges):
            cols = [[0] * d for _ in range(d)]
            for j in range(d):
                cols[j][j] = diag[j]
            for (i, j), v in zip(slots, offs):
                cols[j][i] = v
            try:
                lat = hnf(cols)
            except ValueError:
                continue
            if all(lat.contains([p**e * int(r == c) for r in range(d)]) for c in range(d)):
                yield lat


def _prime_factors(n: int) -> list[int]:
    n, out, q = abs(n), [], 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def coprime(fam: MatrixFamily, seed: int = DEFAULT_SEED, search_primes: Sequence[int] = (2, 3, 5), max_exponent: int = 2, search_cap: int = 20000) -> CoprimeResult:
    """Coprimeness: no rational P, Q with 0 < |det P det Q| < 1 making all P L_i Q integral."""
    d = fam.d
    nz = [m for m in fam.mats if any(any(r) for r in m)]
    image = _image_sum(nz, [[int(i == j) for i in range(d)] for j in range(d)])
    if image is None or image.index > 1:
        return CoprimeResult(False, True, "image lattice", _non_coprime_witness(standard_lattice(d), image, nz, d), {"image_index": image.index if image else None})
    if pre_commuting(fam) is Decision.TRUE and irreducible(fam, seed).decision is Decision.TRUE:
        try:
            rec = recover_dilates(fam, seed)
        except RefusalError:
            rec = None
        if rec is not None:
            D = denominator_norm(rec.system)
            det0 = abs(la.det(fam.rational()[rec.base_index]))
            return CoprimeResult(D == det0, True, "denominator norm", None, {"denominator_norm": D, "abs_det_base": int(det0)})
    primes = set(search_primes)
    G = det_form(fam)
    if not G.is_zero():
        primes |= {p for p in _prime_factors(G.integer_content()) if p <= 50}
    checked = 0
    for p in sorted(primes):
        e_max = max_exponent if p <= 3 else 1
        for e in range(1, e_max + 1):
            for lam in _local_sublattices(d, p, e):
                checked += 1
                if checked > search_cap:
                    break
                img = _image_sum(nz, lam.basis)
                if img is None or img.index > lam.index:
                    return CoprimeResult(False, True, "local search", _non_coprime_witness(lam, img, nz, d), {"prime": p, "exponent": e})
    details = {"primes": sorted(primes), "max_exponent": max_exponent, "lattices_checked": min(checked, search_cap)}
    return CoprimeResult(True, False, "local search", None, details)


# ---------------------------------------------------------------------------
# H for matrix families and the full report


def h_matrices(fam: MatrixFamily, width: float = 1e-10, seed: int = DEFAULT_SEED):
    """prod_i (|a_0i| + ... + |a_ki|) from the linear factorization of det_form."""
    from .dilate_const import h_from_parts

    if pre_commuting(fam) is not Decision.TRUE:
        raise RefusalError("family is not pre-commuting; H is undefined")
    if irreducible(fam, seed).decision is not Decision.TRUE:
        raise RefusalError("family is not certified irreducible")
    rec = recover_dilates(fam, seed)
    det0 = int(abs(la.det(fam.rational()[rec.base_index])))
    return h_from_parts(det0, rec.system, width)


@dataclass
class AnalysisReport:
    pre_commuting: Decision
    irreducible: IrreducibilityResult
    coprime: CoprimeResult | None
    recovered: Recovery | None
    G: MultiPoly
    h: object | None
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        out = {
            "pre_commuting": self.pre_commuting.value,
            "irreducible": self.irreducible.decision.value,
            "irreducible_method": self.irreducible.method,
            "G": str(self.G),
            "notes": list(self.notes),
        }
        if self.coprime is not None:
            out["coprime"] = self.coprime.coprime
            out["coprime_certified"] = self.coprime.certified
            out["coprime_method"] = self.coprime.method
        if self.recovered is not None:
            K = self.recovered.system.field
            out["field"] = str(K)
            out["dilates"] = [str(lam) for lam in self.recovered.system.dilates]
            out["phi"] = [[str(x) for x in row] for row in self.recovered.phi]
        if self.h is not None:
            out.update(self.h.to_json())
        return out


def analyze(fam: MatrixFamily, width: float = 1e-10, seed: int = DEFAULT_SEED) -> AnalysisReport:
    G = det_form(fam)
    pc = pre_commuting(fam)
    irr = irreducible(fam, seed)
    notes = []
    cop = coprime(fam, seed)
    if not cop.certified:
        notes.append("coprime: no obstruction found by bounded local search (not a proof)")
    rec = h = None
    if pc is Decision.TRUE and irr.decision is Decision.TRUE:
        rec = recover_dilates(fam, seed)
        h = h_matrices(fam, width, seed)
    elif pc is not Decision.TRUE:
        notes.append("H is not defined: family is not pre-commuting")
    return AnalysisReport(pc, irr, cop, rec, G, h, notes)
