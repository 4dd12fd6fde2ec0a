"""Polynomials with rational coefficients.

Univariate polynomials are plain coefficient lists, lowest degree first,
with no trailing zeros (the zero polynomial is ``[]``).  ``MultiPoly`` is a
sparse multivariate polynomial used for norm forms, determinant forms and
resultants.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

UPoly = list[Fraction]


# ---------------------------------------------------------------------------
# univariate helpers


def utrim(p: Iterable) -> UPoly:
    out = [Fraction(c) for c in p]
    while out and out[-1] == 0:
        out.pop()
    return out


def udeg(p: Sequence) -> int:
    return len(p) - 1


def uadd(p: Sequence, q: Sequence) -> UPoly:
    n = max(len(p), len(q))
    return utrim((p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n))


def usub(p: Sequence, q: Sequence) -> UPoly:
    return uadd(p, [-c for c in q])


def umul(p: Sequence, q: Sequence) -> UPoly:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return utrim(out)


def uscale(c, p: Sequence) -> UPoly:
    return utrim(c * x for x in p)


def udivmod(p: Sequence, q: Sequence) -> tuple[UPoly, UPoly]:
    q = utrim(q)
    if not q:
        raise ZeroDivisionError("division by the zero polynomial")
    r = utrim(p)
    quo = [Fraction(0)] * max(len(r) - len(q) + 1, 0)
    lead = q[-1]
    while len(r) >= len(q):
        shift = len(r) - len(q)
        c = r[-1] / lead
        quo[shift] = c
        for i, b in enumerate(q):
            r[shift + i] -= c * b
        r = utrim(r)
    return utrim(quo), r


def umod(p: Sequence, q: Sequence) -> UPoly:
    return udivmod(p, q)[1]


def umonic(p: Sequence) -> UPoly:
    p = utrim(p)
    return [c / p[-1] for c in p] if p else []


def ugcd(p: Sequence, q: Sequence) -> UPoly:
    a, b = utrim(p), utrim(q)
    while b:
        a, b = b, umod(a, b)
    return umonic(a)


def uderiv(p: Sequence) -> UPoly:
    return utrim(i * p[i] for i in range(1, len(p)))


def ueval(p: Sequence, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def upow_mod(p: Sequence, e: int, mod: Sequence) -> UPoly:
    result: UPoly = [Fraction(1)]
    base = umod(p, mod)
    while e:
        if e & 1:
            result = umod(umul(result, base), mod)
        base = umod(umul(base, base), mod)
        e >>= 1
    return result


def uprimitive(p: Sequence) -> list[int]:
    """Integer primitive multiple of ``p`` with positive leading coefficient."""
    p = utrim(p)
    if not p:
        return []
    den = reduce(lcm, (c.denominator for c in p), 1)
    ints = [int(c * den) for c in p]
    g = reduce(gcd, ints, 0)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def content_int(coeffs: Iterable[int]) -> int:
    return reduce(gcd, coeffs, 0)


def is_squarefree(p: Sequence) -> bool:
    return udeg(ugcd(p, uderiv(p))) == 0


# ---------------------------------------------------------------------------
# parsing polynomials written in one variable, e.g. "t^2-2" or "1/2*t + 3"

def parse_upoly(text: str, var: str = "t") -> UPoly:
    """Parse a polynomial in ``var`` with rational coefficients.

    Accepts terms like ``3``, ``-2/5``, ``t``, ``3*t^2``, ``1/2*t``,
    ``t**3``.  Raises ``ValueError`` on anything else.
    """
    s = text.replace(" ", "").replace("**", "^")
    if not s:
        raise ValueError("empty polynomial")
    coeffs: dict[int, Fraction] = {}
    pos = 0
    for m in re.finditer(r"([+-]?)([^+-]+)", s):
        if m.start() != pos:
            raise ValueError(f"cannot parse polynomial {text!r}")
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        body = m.group(2)
        factors = body.split("*")
        c = Fraction(sign)
        e = 0
        for f in factors:
            if not f:
                raise ValueError(f"cannot parse polynomial {text!r}")
            if f.startswith(var):
                rest = f[len(var):]
                if rest == "":
                    e += 1
                elif rest.startswith("^") and rest[1:].isdigit():
                    e += int(rest[1:])
                else:
                    raise ValueError(f"cannot parse term {f!r}")
            else:
                try:
                    c *= Fraction(f)
                except (ValueError, ZeroDivisionError) as exc:
                    raise ValueError(f"cannot parse coefficient {f!r}") from exc
        coeffs[e] = coeffs.get(e, Fraction(0)) + c
    if pos != len(s):
        raise ValueError(f"cannot parse polynomial {text!r}")
    n = max(coeffs) + 1
    return utrim(coeffs.get(i, Fraction(0)) for i in range(n))


def format_upoly(p: Sequence, var: str = "t") -> str:
    p = utrim(p)
    if not p:
        return "0"
    parts = []
    for e in range(len(p) - 1, -1, -1):
        c = p[e]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if e == 0:
            body = str(a)
        else:
            mono = var if e == 1 else f"{var}^{e}"
            body = mono if a == 1 else f"{a}*{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------
# multivariate polynomials


class MultiPoly:
    """Sparse polynomial over the rationals in a fixed ordered set of variables.

    Terms are stored as ``{exponent tuple: Fraction}`` with no zero
    coefficients.  Leading terms use graded lexicographic order.
    """

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple, object] | None = None):
        self.variables = tuple(variables)
        clean: dict[tuple, Fraction] = {}
        if terms:
            n = len(self.variables)
            for exps, c in terms.items():
                if len(exps) != n:
                    raise ValueError("exponent vector length does not match variables")
                c = Fraction(c)
                if c != 0:
                    clean[tuple(exps)] = c
        self.terms = clean

    # construction -------------------------------------------------------
    @classmethod
    def constant(cls, variables: Sequence[str], c) -> "MultiPoly":
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, variables: Sequence[str], name: str) -> "MultiPoly":
        i = list(variables).index(name)
        e = [0] * len(variables)
        e[i] = 1
        return cls(variables, {tuple(e): 1})

    @classmethod
    def from_univariate(cls, variables: Sequence[str], name: str, coeffs: Sequence) -> "MultiPoly":
        i = list(variables).index(name)
        terms = {}
        for k, c in enumerate(coeffs):
            e = [0] * len(variables)
            e[i] = k
            terms[tuple(e)] = c
        return cls(variables, terms)

    # basic protocol -----------------------------------------------------
    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.variables != self.variables:
                raise ValueError("variable sets differ")
            return other
        return MultiPoly.constant(self.variables, other)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return MultiPoly(self.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        terms: dict[tuple, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return MultiPoly(self.variables, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = MultiPoly.constant(self.variables, 1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.variables == other.variables and self.terms == other.terms
        try:
            return self == MultiPoly.constant(self.variables, other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # inspection ---------------------------------------------------------
    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree(self, name: str) -> int:
        i = self.variables.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def coefficients_in(self, name: str) -> list["MultiPoly"]:
        """View as a univariate polynomial in ``name``: list of coefficients."""
        i = self.variables.index(name)
        deg = self.degree(name)
        out = [dict() for _ in range(max(deg + 1, 0))]
        for e, c in self.terms.items():
            rest = e[:i] + (0,) + e[i + 1:]
            out[e[i]][rest] = c
        return [MultiPoly(self.variables, t) for t in out]

    def leading(self) -> tuple[tuple, Fraction]:
        e = max(self.terms, key=lambda x: (sum(x), x))
        return e, self.terms[e]

    def denominator_lcm(self) -> int:
        return reduce(lcm, (c.denominator for c in self.terms.values()), 1)

    def integer_content(self) -> int:
        """gcd of the numerators after clearing no denominators (integer polys)."""
        return reduce(gcd, (c.numerator for c in self.terms.values()), 0)

    def rational_content(self) -> Fraction:
        """Positive rational c with self/c primitive with integer coefficients."""
        if not self.terms:
            return Fraction(0)
        den = self.denominator_lcm()
        g = reduce(gcd, (int(c * den) for c in self.terms.values()), 0)
        return Fraction(g, den)

    def evaluate(self, values: Mapping[str, object] | Sequence) -> object:
        """Evaluate at all variables (mapping by name or positional sequence)."""
        if isinstance(values, Mapping):
            vals = [values[v] for v in self.variables]
        else:
            vals = list(values)
        total = 0
        for e, c in self.terms.items():
            t = c
            for v, k in zip(vals, e):
                if k:
                    t = t * v**k
            total = total + t
        return total

    def substitute(self, name: str, value) -> "MultiPoly":
        """Substitute a number for one variable (the variable stays, with degree 0)."""
        i = self.variables.index(name)
        terms: dict[tuple, Fraction] = {}
        for e, c in self.terms.items():
            rest = e[:i] + (0,) + e[i + 1:]
            terms[rest] = terms.get(rest, 0) + c * Fraction(value) ** e[i]
        return MultiPoly(self.variables, terms)

    def drop_variable(self, name: str) -> "MultiPoly":
        """Remove a variable that does not occur."""
        i = self.variables.index(name)
        if any(e[i] for e in self.terms):
            raise ValueError(f"variable {name} still occurs")
        vs = self.variables[:i] + self.variables[i + 1:]
        return MultiPoly(vs, {e[:i] + e[i + 1:]: c for e, c in self.terms.items()})

    def exact_div(self, other: "MultiPoly") -> "MultiPoly":
        """Quotient when ``other`` divides ``self`` exactly; ValueError otherwise."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        le, lc = other.leading()
        rem = self
        quo: dict[tuple, Fraction] = {}
        while rem.terms:
            e, c = rem.leading()
            shift = tuple(a - b for a, b in zip(e, le))
            if any(s < 0 for s in shift):
                raise ValueError("division is not exact")
            q = c / lc
            quo[shift] = quo.get(shift, 0) + q
            mono = MultiPoly(self.variables, {shift: q})
            rem = rem - mono * other
        return MultiPoly(self.variables, quo)

    # display ------------------------------------------------------------
    def __repr__(self):
        return f"MultiPoly({self.variables}, {self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda x: (-sum(x), tuple(-a for a in x))):
            c = self.terms[e]
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.variables, e) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def bareiss_det(matrix: list[list[MultiPoly]]) -> MultiPoly:
    """Determinant of a square matrix with MultiPoly entries (fraction-free)."""
    n = len(matrix)
    a = [list(row) for row in matrix]
    variables = a[0][0].variables
    one = MultiPoly.constant(variables, 1)
    sign = 1
    prev = one
    for k in range(n - 1):
        if a[k][k].is_zero():
            for i in range(k + 1, n):
                if not a[i][k].is_zero():
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return MultiPoly(variables)
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * pivot - a[i][k] * a[k][j]
                a[i][j] = num.exact_div(prev)
            a[i][k] = MultiPoly(variables)
        prev = pivot
    return a[n - 1][n - 1] * sign


def sylvester_matrix(f: MultiPoly, g: MultiPoly, name: str) -> list[list[MultiPoly]]:
    fc = f.coefficients_in(name)
    gc = g.coefficients_in(name)
    m, n = len(fc) - 1, len(gc) - 1
    size = m + n
    zero = MultiPoly(f.variables)
    rows = []
    for i in range(n):
        row = [zero] * size
        for j, c in enumerate(reversed(fc)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for j, c in enumerate(reversed(gc)):
            row[i + j] = c
        rows.append(row)
    return rows


def resultant(f: MultiPoly, g: MultiPoly, name: str = "y") -> MultiPoly:
    """Resultant with respect to ``name`` via Bareiss on the Sylvester matrix.

    The result still carries ``name`` among its variables (with degree 0).
    """
    if f.is_zero() or g.is_zero():
        raise ValueError("degenerate resultant operand")
    m, n = f.degree(name), g.degree(name)
    if m <= 0 and n <= 0:
        return MultiPoly.constant(f.variables, 1)
    if m == 0:
        return f.coefficients_in(name)[0] ** n
    if n == 0:
        return g.coefficients_in(name)[0] ** m
    return bareiss_det(sylvester_matrix(f, g, name))
