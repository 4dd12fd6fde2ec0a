"""Integer lattices in column Hermite normal form.

Convention: a lattice in Z^d is stored by a lower-triangular basis whose
columns generate it, with positive diagonal and each off-diagonal entry of
row i reduced into ``[0, H[i][i])``.  This form is unique, so lattices can be
compared structurally.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Iterator, Sequence

DEFAULT_INDEX_CAP = 10**6

Vector = tuple[int, ...]


class CapExceeded(RuntimeError):
    """An enumeration would exceed its configured size cap."""


def _column_echelon(cols: Sequence[Sequence[int]], track: bool = False):
    """Column echelon form by unimodular column operations.

    Returns ``(pivot_cols, pivot_rows, zero_cols, U)`` where ``pivot_cols``
    are the reduced nonzero columns (lower echelon, positive pivots,
    reduced), ``pivot_rows`` their pivot rows, ``zero_cols`` the number of
    vanishing columns and ``U`` (if tracked) the list of transform columns so
    that ``A @ U`` equals the echelon matrix column by column.
    """
    a = [list(map(int, c)) for c in cols]
    n = len(a)
    d = len(a[0]) if n else 0
    u = [[int(i == j) for i in range(n)] for j in range(n)] if track else None

    def sub(dst: int, src: int, q: int) -> None:
        if q == 0:
            return
        cs, cd = a[src], a[dst]
        for r in range(d):
            cd[r] -= q * cs[r]
        if u is not None:
            us, ud = u[src], u[dst]
            for r in range(n):
                ud[r] -= q * us[r]

    def swap(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        if u is not None:
            u[i], u[j] = u[j], u[i]

    def negate(i: int) -> None:
        a[i] = [-x for x in a[i]]
        if u is not None:
            u[i] = [-x for x in u[i]]

    pc = 0
    pivot_rows: list[int] = []
    for row in range(d):
        if pc == n:
            break
        while True:
            nz = [j for j in range(pc, n) if a[j][row] != 0]
            if not nz:
                break
            j0 = min(nz, key=lambda j: abs(a[j][row]))
            if len(nz) == 1:
                swap(pc, j0)
                if a[pc][row] < 0:
                    negate(pc)
                pivot_rows.append(row)
                pc += 1
                break
            for j in nz:
                if j != j0:
                    sub(j, j0, a[j][row] // a[j0][row])
    # reduce entries left of each pivot
    for j, row in enumerate(pivot_rows):
        p = a[j][row]
        for c in range(j):
            sub(c, j, a[c][row] // p)
    return a[:pc], pivot_rows, n - pc, u


@dataclass(frozen=True)
class IntegerLattice:
    """Full-rank sublattice of Z^d in canonical column HNF.

    ``basis`` holds the basis columns.  ``shift`` turns the object into the
    affine coset ``shift + lattice`` (used by density computations).
    """

    dim: int
    basis: tuple[Vector, ...]
    shift: Vector | None = field(default=None, compare=True)

    @property
    def index(self) -> int:
        return prod(self.basis[i][i] for i in range(self.dim))

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.basis[i][i] for i in range(self.dim))

    def rows(self) -> list[list[int]]:
        return [[self.basis[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def linear(self) -> "IntegerLattice":
        return self if self.shift is None else IntegerLattice(self.dim, self.basis)

    def translate(self, v: Sequence[int]) -> "IntegerLattice":
        base = self.shift or (0,) * self.dim
        s = self.linear().reduce(tuple(a + int(b) for a, b in zip(base, v)))
        return IntegerLattice(self.dim, self.basis, s)

    def coordinates(self, v: Sequence) -> list[Fraction]:
        """Coordinates of ``v`` (minus shift) in the basis, by forward substitution."""
        w = [Fraction(x) for x in v]
        if self.shift is not None:
            w = [x - s for x, s in zip(w, self.shift)]
        x = [Fraction(0)] * self.dim
        for i in range(self.dim):
            acc = w[i] - sum(self.basis[j][i] * x[j] for j in range(i))
            x[i] = acc / self.basis[i][i]
        return x

    def contains(self, v: Sequence) -> bool:
        return all(c.denominator == 1 for c in self.coordinates(v))

    def reduce(self, v: Sequence[int]) -> Vector:
        """Canonical representative of ``v`` modulo the (linear) lattice."""
        w = [int(x) for x in v]
        for i in range(self.dim):
            col = self.basis[i]
            q = w[i] // col[i]
            if q:
                for r in range(i, self.dim):
                    w[r] -= q * col[r]
        return tuple(w)

    def scaled(self, c: int) -> "IntegerLattice":
        return hnf([[c * x for x in col] for col in self.basis])

    def __repr__(self) -> str:
        cols = ", ".join(str(list(c)) for c in self.basis)
        s = f", shift={list(self.shift)}" if self.shift is not None else ""
        return f"IntegerLattice([{cols}]{s})"


def hnf(columns: Sequence[Sequence[int]]) -> IntegerLattice:
    """Canonical HNF lattice generated by ``columns`` (must span full rank)."""
    columns = [list(map(int, c)) for c in columns]
    if not columns:
        raise ValueError("lattice not full rank")
    d = len(columns[0])
    piv, rows, _, _ = _column_echelon(columns)
    if len(piv) != d or rows != list(range(d)):
        raise ValueError("lattice not full rank")
    return IntegerLattice(d, tuple(tuple(c) for c in piv))


def standard_lattice(d: int) -> IntegerLattice:
    return hnf([[int(i == j) for i in range(d)] for j in range(d)])


def scalar_lattice(d: int, c: int) -> IntegerLattice:
    return hnf([[c * int(i == j) for i in range(d)] for j in range(d)])


def integer_kernel(columns: Sequence[Sequence[int]]) -> list[list[int]]:
    """Z-basis of {x in Z^n : sum x_j columns[j] = 0}."""
    piv, _, nzero, u = _column_echelon(columns, track=True)
    return [list(c) for c in u[len(piv):]]


def lattice_member(v: Sequence[int], lattice: IntegerLattice) -> bool:
    return lattice.contains(v)


def is_sublattice(sub: IntegerLattice, sup: IntegerLattice) -> bool:
    return all(sup.contains(c) for c in sub.basis)


def lattice_sum(a: IntegerLattice, b: IntegerLattice) -> IntegerLattice:
    return hnf(list(a.basis) + list(b.basis))


def lattice_intersect(a: IntegerLattice, b: IntegerLattice) -> IntegerLattice:
    """Intersection via the integer kernel of [A | -B]."""
    if a.dim != b.dim:
        raise ValueError("dimension mismatch")
    d = a.dim
    cols = [list(c) for c in a.basis] + [[-x for x in c] for c in b.basis]
    ker = integer_kernel(cols)
    gens = []
    for k in ker:
        coeffs = k[:d]
        gens.append([sum(coeffs[j] * a.basis[j][i] for j in range(d)) for i in range(d)])
    return hnf(gens)


def lattice_image(matrix: Sequence[Sequence[int]], lattice: IntegerLattice) -> IntegerLattice:
    """Image of ``lattice`` under a nonsingular integer matrix (rows)."""
    gens = [[sum(int(row[j]) * col[j] for j in range(lattice.dim)) for row in matrix] for col in lattice.basis]
    return hnf(gens)


def relative_index(sup: IntegerLattice, sub: IntegerLattice) -> int:
    if not is_sublattice(sub, sup):
        raise ValueError("not a sublattice")
    return sub.index // sup.index


def coset_reps(sup: IntegerLattice, sub: IntegerLattice, cap: int = DEFAULT_INDEX_CAP) -> list[Vector]:
    """Representatives of sup/sub, each reduced into sub's HNF fundamental domain."""
    if not is_sublattice(sub, sup):
        raise ValueError("not a sublattice")
    count = sub.index // sup.index
    if count > cap:
        raise CapExceeded(f"coset enumeration of size {count} exceeds cap {cap}")
    d = sup.dim
    # sub expressed in sup coordinates
    rel_cols = [[int(x) for x in sup.coordinates(c)] for c in sub.basis]
    rel = hnf(rel_cols)
    reps = []
    for x in itertools.product(*(range(t) for t in rel.diagonal)):
        v = [sum(sup.basis[j][i] * x[j] for j in range(d)) for i in range(d)]
        reps.append(sub.reduce(v))
    return reps


def iter_coset_reps(sup: IntegerLattice, sub: IntegerLattice, cap: int = DEFAULT_INDEX_CAP) -> Iterator[Vector]:
    yield from coset_reps(sup, sub, cap)


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ M @ V == diag`` with unimodular U, V and d1 | d2 | ..."""

    U: tuple[tuple[int, ...], ...]
    V: tuple[tuple[int, ...], ...]
    diag: tuple[int, ...]


def smith(matrix: Sequence[Sequence[int]]) -> SmithDecomposition:
    """Smith normal form of an integer matrix given by rows."""
    a = [list(map(int, r)) for r in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_op(dst, src, q):  # row dst -= q * row src
        a[dst] = [x - q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x - q * y for x, y in zip(u[dst], u[src])]

    def col_op(dst, src, q):  # col dst -= q * col src
        for r in a:
            r[dst] -= q * r[src]
        for r in v:
            r[dst] -= q * r[src]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    t = 0
    while t < min(m, n):
        entries = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j] != 0]
        if not entries:
            break
        _, i0, j0 = min(entries)
        swap_rows(t, i0)
        swap_cols(t, j0)
        while True:
            done = True
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    row_op(i, t, q)
                    if a[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    col_op(j, t, q)
                    if a[t][j]:
                        swap_cols(t, j)
                        done = False
            if done:
                bad = next(
                    ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % a[t][t]),
                    None,
                )
                if bad is None:
                    break
                # fold the offending row into row t and keep going
                i = bad[0]
                a[t] = [x + y for x, y in zip(a[t], a[i])]
                u[t] = [x + y for x, y in zip(u[t], u[i])]
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    diag = tuple(a[i][i] for i in range(min(m, n)))
    return SmithDecomposition(tuple(map(tuple, u)), tuple(map(tuple, v)), diag)


def quotient_invariants(sup: IntegerLattice, sub: IntegerLattice) -> tuple[int, ...]:
    """Invariant factors of the finite group sup/sub."""
    rel = [[int(x) for x in sup.coordinates(c)] for c in sub.basis]
    rows = [[rel[j][i] for j in range(sup.dim)] for i in range(sup.dim)]
    return smith(rows).diag
