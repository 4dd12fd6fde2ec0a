"""Number fields Q[y]/(f), integral bases and ideal lattices.

Elements live in the power basis 1, theta, ..., theta^(d-1).  Ideals are
stored as ``(1/denominator) * lattice`` where the lattice is an integer HNF
lattice in the coordinates of a fixed integral basis of the ring of
integers.  No maximal-order computation is attempted: integral bases come
from the quadratic catalog, the monogenic assumption, or the caller.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from math import gcd, isqrt, lcm
from typing import Iterable, Sequence

from .exactalg import linalg as la
from .exactalg.factor import is_irreducible
from .exactalg.lattice import (
    IntegerLattice,
    hnf,
    integer_kernel,
    standard_lattice,
)
from .exactalg.poly import (
    MultiPoly,
    format_upoly,
    parse_upoly,
    resultant,
    umod,
    umul,
    uprimitive,
    utrim,
)


class FieldError(ValueError):
    pass


# ---------------------------------------------------------------------------
# fields and elements


@dataclass(frozen=True)
class NumberField:
    """K = Q[y]/(f) for a primitive irreducible integer polynomial f."""

    poly: tuple[int, ...]  # coefficients, lowest degree first

    def __post_init__(self):
        p = tuple(uprimitive(self.poly))
        if len(p) < 2:
            raise FieldError("defining polynomial must have positive degree")
        object.__setattr__(self, "poly", p)

    @classmethod
    def from_poly(cls, coeffs: Sequence, check: bool = True) -> "NumberField":
        K = cls(tuple(uprimitive(coeffs)))
        if check and is_irreducible(list(K.poly)) is False:
            raise FieldError(f"defining polynomial {K} is reducible")
        return K

    @classmethod
    def parse(cls, text: str, check: bool = True) -> "NumberField":
        return cls.from_poly(parse_upoly(text), check=check)

    @property
    def degree(self) -> int:
        return len(self.poly) - 1

    @property
    def leading(self) -> int:
        return self.poly[-1]

    @property
    def is_monic(self) -> bool:
        return self.poly[-1] == 1

    def element(self, coeffs: Iterable) -> "FieldElement":
        r = umod(utrim(coeffs), [Fraction(c) for c in self.poly])
        r = r + [Fraction(0)] * (self.degree - len(r))
        return FieldElement(self, tuple(r))

    def parse_element(self, text: str) -> "FieldElement":
        return self.element(parse_upoly(text))

    def rational(self, q) -> "FieldElement":
        return self.element([Fraction(q)])

    def one(self) -> "FieldElement":
        return self.rational(1)

    def zero(self) -> "FieldElement":
        return self.rational(0)

    def generator(self) -> "FieldElement":
        return self.element([0, 1]) if self.degree > 1 else self.element([-Fraction(self.poly[0], self.poly[1])])

    def __str__(self) -> str:
        return format_upoly([Fraction(c) for c in self.poly])


@dataclass(frozen=True)
class FieldElement:
    field: NumberField
    coeffs: tuple[Fraction, ...]

    def _check(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError("elements of different fields")
            return other
        return self.field.rational(other)

    def __add__(self, other):
        other = self._check(other)
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        return elem_mul(self, other, self.field)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        sol = la.solve(self.mult_matrix(), [Fraction(int(i == 0)) for i in range(self.field.degree)])
        return FieldElement(self.field, tuple(sol))

    def __truediv__(self, other):
        return self * self._check(other).inverse()

    def __rtruediv__(self, other):
        return self._check(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.field.one()
        for _ in range(n):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def mult_matrix(self) -> la.Matrix:
        """Matrix of multiplication by self in the power basis (columns x*theta^j)."""
        d = self.field.degree
        cols = []
        for j in range(d):
            e = [Fraction(0)] * d
            e[j] = Fraction(1)
            cols.append(list((self * FieldElement(self.field, tuple(e))).coeffs))
        return la.transpose(cols)

    def norm(self) -> Fraction:
        return la.det(self.mult_matrix())

    def trace(self) -> Fraction:
        m = self.mult_matrix()
        return sum(m[i][i] for i in range(len(m)))

    def minpoly_degree(self) -> int:
        d = self.field.degree
        powers, p = [], self.field.one()
        for _ in range(d):
            powers.append(list(p.coeffs))
            p = p * self
        return la.rank(powers)

    def __str__(self) -> str:
        return format_upoly(list(self.coeffs))


def elem_mul(a: FieldElement, b: FieldElement, K: NumberField) -> FieldElement:
    """Product reduced modulo the defining polynomial over Q."""
    if a.field != K or b.field != K:
        raise FieldError("elements of different fields")
    return K.element(umul(list(a.coeffs), list(b.coeffs)))


# ---------------------------------------------------------------------------
# dilate systems and norm forms


@dataclass(frozen=True)
class DilateSystem:
    """lambda_1, ..., lambda_k in K (lambda_0 = 1 is implicit)."""

    field: NumberField
    dilates: tuple[FieldElement, ...]
    trusted: bool = False

    def __post_init__(self):
        if not self.dilates:
            raise FieldError("need at least one dilate")
        for lam in self.dilates:
            if lam.field != self.field:
                raise FieldError("dilate from a different field")
            if lam.is_zero():
                raise FieldError("dilates must be nonzero")

    @classmethod
    def parse(cls, field_text: str, dilate_texts: Sequence[str], trusted: bool = False) -> "DilateSystem":
        K = NumberField.parse(field_text)
        return cls(K, tuple(K.parse_element(t) for t in dilate_texts), trusted)

    @property
    def k(self) -> int:
        return len(self.dilates)

    @property
    def d(self) -> int:
        return self.field.degree

    def with_unit(self) -> tuple[FieldElement, ...]:
        return (self.field.one(),) + self.dilates


def generates_field(sys: DilateSystem, seed: int = 0, retries: int = 3) -> bool:
    """Whether the dilates generate K, via a random integer combination.

    A combination of degree d proves generation.  When several random
    combinations all have lower degree, the dilates are declared to lie in a
    proper subfield (generic combinations of generators are primitive).
    """
    d = sys.d
    if d == 1:
        return True
    rng = random.Random(seed)
    for _ in range(retries):
        coeffs = [rng.randint(-5, 5) for _ in sys.dilates]
        combo = sys.field.zero()
        for c, lam in zip(coeffs, sys.dilates):
            combo = combo + lam * c
        if combo.minpoly_degree() == d:
            return True
    # exhaustively confirm using the algebra generated by all dilates
    span = [list(sys.field.one().coeffs)]
    frontier = [sys.field.one()]
    while frontier:
        new = []
        for x in frontier:
            for lam in sys.dilates:
                y = x * lam
                if la.rank(span + [list(y.coeffs)]) > len(span):
                    span.append(list(y.coeffs))
                    new.append(y)
        frontier = new
    return len(span) == d


def _norm_variables(k: int) -> tuple[str, ...]:
    return tuple(f"x{i}" for i in range(k + 1))


def norm_form(sys: DilateSystem) -> MultiPoly:
    """N(x0 + x1*lambda_1 + ... + xk*lambda_k) as a form in x0..xk."""
    xs = _norm_variables(sys.k)
    if sys.d == 1:
        terms = {tuple(int(i == 0) for i in range(sys.k + 1)): 1}
        for l, lam in enumerate(sys.dilates, start=1):
            terms[tuple(int(i == l) for i in range(sys.k + 1))] = lam.coeffs[0]
        return MultiPoly(xs, terms)
    vs = ("y",) + xs
    f = MultiPoly.from_univariate(vs, "y", [Fraction(c) for c in sys.field.poly])
    lin = MultiPoly.var(vs, "x0")
    for l, lam in enumerate(sys.dilates, start=1):
        g = MultiPoly.from_univariate(vs, "y", list(lam.coeffs))
        lin = lin + MultiPoly.var(vs, f"x{l}") * g
    m = lin.degree("y")
    res = resultant(f, lin, "y")
    res = res * Fraction(1, sys.field.leading**m)
    return res.drop_variable("y")


def denominator_norm(sys: DilateSystem) -> int:
    """Smallest positive D with D * norm_form integral (equals N(denominator ideal))."""
    return norm_form(sys).denominator_lcm()


# ---------------------------------------------------------------------------
# integral bases


@dataclass(frozen=True)
class IntegralBasis:
    """Z-basis e_1 = 1, e_2, ..., e_d of the ring of integers."""

    field: NumberField
    elements: tuple[FieldElement, ...]
    provenance: str = "user-supplied"

    def __post_init__(self):
        d = self.field.degree
        if len(self.elements) != d:
            raise FieldError("integral basis has wrong length")
        if la.rank([list(e.coeffs) for e in self.elements]) != d:
            raise FieldError("integral basis is not a Q-basis")
        elems = self.elements
        if elems[0].coeffs != self.field.one().coeffs:
            elems = _rebase_with_one(self.field, elems)
            object.__setattr__(self, "elements", elems)
        for i in range(d):
            for j in range(d):
                c = self.to_coords(elems[i] * elems[j])
                if any(x.denominator != 1 for x in c):
                    raise FieldError("basis not multiplicatively closed")

    @cached_property
    def matrix(self) -> la.Matrix:
        """Columns are the power-basis coordinates of the basis elements."""
        return la.transpose([list(e.coeffs) for e in self.elements])

    @cached_property
    def inverse_matrix(self) -> la.Matrix:
        return la.inverse(self.matrix)

    @property
    def d(self) -> int:
        return self.field.degree

    def to_coords(self, x: FieldElement) -> list[Fraction]:
        return la.mat_vec(self.inverse_matrix, list(x.coeffs))

    def from_coords(self, c: Sequence) -> FieldElement:
        return FieldElement(self.field, tuple(Fraction(v) for v in la.mat_vec(self.matrix, list(c))))

    def mult_matrix(self, x: FieldElement) -> la.Matrix:
        """Multiplication by x in basis coordinates."""
        return la.mat_mul(self.inverse_matrix, la.mat_mul(x.mult_matrix(), self.matrix))

    def is_integral(self, x: FieldElement) -> bool:
        return all(c.denominator == 1 for c in self.to_coords(x))


def _rebase_with_one(K: NumberField, elems: Sequence[FieldElement]) -> tuple[FieldElement, ...]:
    """Replace the basis by an equivalent one whose first element is 1."""
    mat = la.transpose([list(e.coeffs) for e in elems])
    c = la.solve(mat, list(K.one().coeffs))
    if c is None or any(x.denominator != 1 for x in c):
        raise FieldError("1 is not an integer combination of the basis")
    c = [int(x) for x in c]
    u = _unimodular_with_first_column(c)
    new = []
    for j in range(len(elems)):
        coeffs = [sum(mat[i][r] * u[r][j] for r in range(len(elems))) for i in range(len(elems))]
        new.append(FieldElement(K, tuple(Fraction(x) for x in coeffs)))
    return tuple(new)


def _unimodular_with_first_column(c: Sequence[int]) -> list[list[int]]:
    """Unimodular integer matrix whose first column is the primitive vector c."""
    n = len(c)
    if reduce(gcd, c, 0) != 1:
        raise FieldError("coordinates of 1 are not primitive")
    # column operations reducing c to e_1, recorded as W with c^T-style action
    # we build V with V @ c = e_1 and return V^-1
    v = [[int(i == j) for j in range(n)] for i in range(n)]
    w = list(c)
    while sum(1 for x in w if x != 0) > 1 or w[0] == 0:
        nz = [i for i in range(n) if w[i] != 0]
        i0 = min(nz, key=lambda i: abs(w[i]))
        for i in nz:
            if i != i0:
                q = w[i] // w[i0]
                w[i] -= q * w[i0]
                v[i] = [a - q * b for a, b in zip(v[i], v[i0])]
        if sum(1 for x in w if x != 0) == 1 and w[0] == 0:
            i1 = next(i for i in range(n) if w[i] != 0)
            w[0], w[i1] = w[i1], w[0]
            v[0], v[i1] = v[i1], v[0]
    if w[0] < 0:
        w[0] = -w[0]
        v[0] = [-a for a in v[0]]
    inv = la.inverse(v)
    return [[int(x) for x in row] for row in inv]


def quadratic_basis(m: int) -> IntegralBasis:
    """Catalog integral basis of Q(sqrt m) for squarefree m (field y^2 - m)."""
    if m in (0, 1):
        raise FieldError("m must not be 0 or 1")
    a = abs(m)
    for p in range(2, isqrt(a) + 1):
        if a % (p * p) == 0:
            raise FieldError(f"{m} is not squarefree")
    K = NumberField((-m, 0, 1))
    one, theta = K.one(), K.generator()
    if m % 4 == 1:
        second = (one + theta) * Fraction(1, 2)
    else:
        second = theta
    return IntegralBasis(K, (one, second), "catalog")


def monogenic_basis(K: NumberField) -> IntegralBasis:
    """The basis 1, theta, ..., theta^(d-1), valid when O_K = Z[theta] (user-asserted)."""
    if not K.is_monic:
        raise FieldError("monogenic basis needs a monic defining polynomial")
    d = K.degree
    elems = tuple(K.element([0] * i + [1]) for i in range(d))
    return IntegralBasis(K, elems, "monogenic")


def rational_basis() -> IntegralBasis:
    K = NumberField((0, 1))
    return IntegralBasis(K, (K.one(),), "catalog")


def default_basis(K: NumberField, elements: Sequence[str] | None = None) -> IntegralBasis:
    """Caller-supplied basis, else the quadratic catalog, else the monogenic basis."""
    if elements:
        return IntegralBasis(K, tuple(K.parse_element(e) for e in elements), "user-supplied")
    if K.degree == 1:
        if K.poly != (0, 1):
            raise FieldError("write the rational field as t")
        return rational_basis()
    if K.degree == 2 and K.poly[1] == 0 and K.poly[2] == 1:
        try:
            return quadratic_basis(-K.poly[0])
        except FieldError:
            pass
    return monogenic_basis(K)


# ---------------------------------------------------------------------------
# ideals as lattices


@dataclass(frozen=True)
class FractionalIdealLattice:
    """The fractional ideal (1/denominator) * lattice in basis coordinates."""

    lattice: IntegerLattice
    denominator: int = 1
    _normalized: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self):
        if self.denominator <= 0:
            raise FieldError("denominator must be positive")
        if not self._normalized:
            g = reduce(gcd, (x for col in self.lattice.basis for x in col), self.denominator)
            if g > 1:
                lat = hnf([[x // g for x in col] for col in self.lattice.basis])
                object.__setattr__(self, "lattice", lat)
                object.__setattr__(self, "denominator", self.denominator // g)
            object.__setattr__(self, "_normalized", True)

    @classmethod
    def from_generators(cls, gens: Sequence[Sequence]) -> "FractionalIdealLattice":
        """Ideal lattice spanned by rational coordinate vectors."""
        den = reduce(lcm, (Fraction(x).denominator for g in gens for x in g), 1)
        ints = [[int(Fraction(x) * den) for x in g] for g in gens]
        return cls(hnf(ints), den)

    @classmethod
    def unit(cls, d: int) -> "FractionalIdealLattice":
        return cls(standard_lattice(d), 1)

    @property
    def dim(self) -> int:
        return self.lattice.dim

    def columns(self) -> list[list[Fraction]]:
        return [[Fraction(x, self.denominator) for x in col] for col in self.lattice.basis]

    def basis_matrix(self) -> la.Matrix:
        return la.transpose(self.columns())

    def contains(self, coords: Sequence) -> bool:
        return self.lattice.contains([Fraction(x) * self.denominator for x in coords])

    def is_integral(self) -> bool:
        return self.denominator == 1

    def norm(self) -> Fraction:
        """Covolume relative to the ring of integers (index for integral ideals)."""
        return Fraction(self.lattice.index, self.denominator**self.dim)

    def is_ideal(self, basis: IntegralBasis) -> bool:
        for e in basis.elements:
            t = basis.mult_matrix(e)
            for col in self.columns():
                if not self.contains(la.mat_vec(t, col)):
                    return False
        return True

    def coords_of(self, coords: Sequence) -> list[Fraction]:
        """Coordinates of a basis-coordinate vector in this ideal's own basis."""
        return self.lattice.coordinates([Fraction(x) * self.denominator for x in coords])

    def __repr__(self) -> str:
        cols = ", ".join(str(list(c)) for c in self.lattice.basis)
        return f"Ideal(1/{self.denominator} * [{cols}])"


def _integral_preimage(mats: Sequence[Sequence[Sequence]]) -> IntegerLattice:
    """{c in Z^d : T c in Z^d for every T in mats} (all T rational d x d)."""
    rows = [list(r) for t in mats for r in t]
    d = len(rows[0])
    q = la.common_denominator(x for r in rows for x in r)
    if q == 1:
        return standard_lattice(d)
    s = [[int(x * q) for x in r] for r in rows]
    nrows = len(s)
    # columns of [S | q I] ; kernel vectors (c, -z) give S c = q z
    cols = [[s[i][j] for i in range(nrows)] for j in range(d)]
    cols += [[q * int(i == j) for i in range(nrows)] for j in range(nrows)]
    ker = integer_kernel(cols)
    return hnf([v[:d] for v in ker])


def preimage_ideal(elements: Sequence[FieldElement], basis: IntegralBasis) -> FractionalIdealLattice:
    """O_K intersected with x^-1 O_K over the given elements x."""
    mats = [basis.mult_matrix(x) for x in elements]
    if not mats:
        return FractionalIdealLattice.unit(basis.d)
    return FractionalIdealLattice(_integral_preimage(mats), 1)


def denominator_ideal(sys: DilateSystem, basis: IntegralBasis) -> FractionalIdealLattice:
    """{x in O_K : x * lambda_l in O_K for all l}."""
    if basis.field != sys.field:
        raise FieldError("basis belongs to a different field")
    return preimage_ideal(sys.dilates, basis)


def ideal_product(a: FractionalIdealLattice, b: FractionalIdealLattice, basis: IntegralBasis) -> FractionalIdealLattice:
    gens = []
    for ca in a.lattice.basis:
        t = basis.mult_matrix(basis.from_coords(ca))
        for cb in b.lattice.basis:
            gens.append([int(x) for x in la.mat_vec(t, list(cb))])
    return FractionalIdealLattice(hnf(gens), a.denominator * b.denominator)


def ideal_power(a: FractionalIdealLattice, n: int, basis: IntegralBasis) -> FractionalIdealLattice:
    if n < 0:
        return ideal_power(ideal_inverse(a, basis), -n, basis)
    out = FractionalIdealLattice.unit(basis.d)
    for _ in range(n):
        out = ideal_product(out, a, basis)
    return out


def ideal_inverse(a: FractionalIdealLattice, basis: IntegralBasis) -> FractionalIdealLattice:
    """{x in K : x * a subset of O_K}."""
    if a.lattice.index == 0:
        raise FieldError("zero ideal")
    s = a.lattice.index
    mats = [
        la.mat_scale(Fraction(1, s), basis.mult_matrix(basis.from_coords(col)))
        for col in a.lattice.basis
    ]
    pre = _integral_preimage(mats)
    # inverse = (den / s) * pre
    return FractionalIdealLattice(pre.scaled(a.denominator), s)


def ideal_intersection(a: FractionalIdealLattice, b: FractionalIdealLattice) -> FractionalIdealLattice:
    from .exactalg.lattice import lattice_intersect

    den = lcm(a.denominator, b.denominator)
    la_ = a.lattice.scaled(den // a.denominator)
    lb_ = b.lattice.scaled(den // b.denominator)
    return FractionalIdealLattice(lattice_intersect(la_, lb_), den)


def mult_matrix(lam: FieldElement, source: FractionalIdealLattice, target: FractionalIdealLattice, basis: IntegralBasis) -> list[list[int]]:
    """Integer matrix of x -> lam * x from source coordinates to target coordinates."""
    t = basis.mult_matrix(lam)
    src = source.basis_matrix()
    tgt_inv = la.inverse(target.basis_matrix())
    m = la.mat_mul(tgt_inv, la.mat_mul(t, src))
    if any(x.denominator != 1 for row in m for x in row):
        raise FieldError("dilate does not map lattice into target")
    return [[int(x) for x in row] for row in m]


def dilate_matrices(sys: DilateSystem, basis: IntegralBasis) -> tuple[FractionalIdealLattice, list[list[list[int]]]]:
    """The denominator ideal and the matrices of multiplication by 1, lambda_1, ...

    Each matrix maps coordinates in the denominator ideal to coordinates in O_K.
    """
    dd = denominator_ideal(sys, basis)
    unit = FractionalIdealLattice.unit(sys.d)
    mats = [mult_matrix(lam, dd, unit, basis) for lam in sys.with_unit()]
    return dd, mats
