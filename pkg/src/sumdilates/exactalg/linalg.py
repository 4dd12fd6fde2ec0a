"""Dense exact linear algebra over the rationals.

Matrices are lists of rows. Entries may be ``int`` or ``Fraction``; results
are returned with ``Fraction`` entries unless stated otherwise.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = list[list[Fraction]]


def to_fractions(m: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in m]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> Matrix:
    return [[Fraction(0)] * cols for _ in range(rows)]


def transpose(m: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*m)]


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), 0) for col in bt] for row in a]


def mat_vec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum((x * y for x, y in zip(row, v)), 0) for row in a]


def mat_add(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c, a: Sequence[Sequence]) -> list[list]:
    return [[c * x for x in row] for row in a]


def lin_comb(coeffs: Sequence, mats: Sequence[Sequence[Sequence]]) -> list[list]:
    """Return ``sum(c * M for c, M in zip(coeffs, mats))``."""
    n, m = len(mats[0]), len(mats[0][0])
    out = [[0] * m for _ in range(n)]
    for c, mat in zip(coeffs, mats):
        if c == 0:
            continue
        for i in range(n):
            row, src = out[i], mat[i]
            for j in range(m):
                row[j] += c * src[j]
    return out


def is_zero(a: Sequence[Sequence]) -> bool:
    return all(x == 0 for row in a for x in row)


def commutes(a, b) -> bool:
    return mat_mul(a, b) == mat_mul(b, a)


def det(m: Sequence[Sequence]) -> Fraction:
    """Determinant by fraction-free Bareiss elimination."""
    n = len(m)
    if n == 0:
        return Fraction(1)
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * pivot - a[i][k] * a[k][j]
                a[i][j] = num // prev if isinstance(num, int) and isinstance(prev, int) else Fraction(num) / prev
            a[i][k] = 0
        prev = pivot
    return Fraction(sign * a[n - 1][n - 1])


def rref(m: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    a = to_fractions(m)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: Sequence[Sequence]) -> int:
    if not m or not m[0]:
        return 0
    return len(rref(m)[1])


def nullspace(m: Sequence[Sequence]) -> Matrix:
    """Basis (list of vectors) of the right kernel of ``m``."""
    cols = len(m[0])
    r, pivots = rref(m)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -r[i][f]
        basis.append(v)
    return basis


def inverse(m: Sequence[Sequence]) -> Matrix:
    n = len(m)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(to_fractions(m))]
    r, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in r]


def solve(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """A solution of ``a x = b`` (any, if not unique) or None if inconsistent."""
    cols = len(a[0])
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    r, pivots = rref(aug)
    if cols in pivots:
        return None
    x = [Fraction(0)] * cols
    for i, p in enumerate(pivots):
        x[p] = r[i][cols]
    return x


def span_basis(vectors: Sequence[Sequence]) -> Matrix:
    """Row-reduced basis of the span of ``vectors``."""
    if not vectors:
        return []
    r, pivots = rref(vectors)
    return r[: len(pivots)]


def charpoly(m: Sequence[Sequence]) -> list[Fraction]:
    """Characteristic polynomial det(yI - m), coefficients low to high.

    Uses the Faddeev-LeVerrier recursion, which is exact over the rationals.
    """
    n = len(m)
    a = to_fractions(m)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    mk = zeros(n, n)
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        mk = mat_mul(a, mk)
        c_prev = coeffs[n - k + 1]
        for i in range(n):
            mk[i][i] += c_prev
        am = mat_mul(a, mk)
        trace = sum(am[i][i] for i in range(n))
        coeffs[n - k] = -trace / k
    return coeffs


def mat_pow_combination(coeffs: Sequence, m: Sequence[Sequence]) -> Matrix:
    """Evaluate the polynomial ``sum coeffs[i] * m**i`` (Horner)."""
    n = len(m)
    out = zeros(n, n)
    for c in reversed(coeffs):
        out = mat_mul(out, m)
        for i in range(n):
            out[i][i] += c
    return out


def common_denominator(values) -> int:
    den = 1
    for x in values:
        q = Fraction(x).denominator
        den = den * q // gcd(den, q)
    return den

