"""Irreducibility certificates and small factorizations over the rationals.

The fast path is Rabin's irreducibility test modulo small primes: if a
primitive integer polynomial stays irreducible of the same degree modulo a
prime, it is irreducible over Q.  Some irreducible polynomials (x^4 + 1) split
modulo every prime, so an exact factorization is used as a fallback for small
degrees.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .poly import UPoly, uprimitive, utrim

SMALL_PRIMES = (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73)


def _trim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _pmod(a: list[int], b: list[int], p: int) -> list[int]:
    a = [x % p for x in a]
    _trim(a)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        c = a[-1] * inv % p
        shift = len(a) - 1 - db
        for i, y in enumerate(b):
            a[shift + i] = (a[shift + i] - c * y) % p
        _trim(a)
    return a


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    b = _trim([x % p for x in b])
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppow_x(e: int, f: list[int], p: int) -> list[int]:
    """x^e mod f over F_p."""
    result = [1]
    base = _pmod([0, 1], f, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), f, p)
        base = _pmod(_pmul(base, base, p), f, p)
        e >>= 1
    return result


def _prime_factors(n: int) -> list[int]:
    out, q = [], 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def irreducible_mod_p(f: Sequence[int], p: int) -> bool:
    """Rabin's test for f over F_p (f must keep its degree mod p)."""
    f = _trim([int(x) % p for x in f])
    n = len(f) - 1
    if n <= 0:
        return False
    if n == 1:
        return True

    def minus_x(g):
        g = g + [0] * max(0, 2 - len(g))
        g[1] = (g[1] - 1) % p
        return _trim(g)

    if _pmod(minus_x(_ppow_x(p**n, f, p)), f, p):
        return False
    for q in _prime_factors(n):
        g = _pgcd(f, minus_x(_ppow_x(p ** (n // q), f, p)), p)
        if len(g) - 1 > 0:
            return False
    return True


def certify_irreducible_mod_p(poly: Sequence, primes: Sequence[int] = SMALL_PRIMES) -> int | None:
    """A prime modulo which ``poly`` is irreducible of full degree, if found."""
    f = uprimitive(poly)
    if len(f) <= 2:
        return None
    for p in primes:
        if f[-1] % p == 0:
            continue
        if irreducible_mod_p(f, p):
            return p
    return None


def factor_rational(poly: Sequence) -> list[tuple[UPoly, int]]:
    """Monic irreducible factors over Q with multiplicities.

    Backed by sympy's exact factorization over the integers.
    """
    import sympy

    y = sympy.Symbol("y")
    coeffs = utrim(poly)
    expr = sum(sympy.Rational(c.numerator, c.denominator) * y**i for i, c in enumerate(coeffs))
    _, factors = sympy.factor_list(sympy.Poly(expr, y, domain="QQ"))
    out = []
    for fac, mult in factors:
        cs = [Fraction(int(c.p), int(c.q)) for c in reversed(fac.all_coeffs())]
        lead = cs[-1]
        out.append(([c / lead for c in cs], int(mult)))
    out.sort(key=lambda t: (len(t[0]), t[0]))
    return out


def is_irreducible(poly: Sequence, exact_degree_limit: int = 6) -> bool | None:
    """True/False when decided, None when the degree is above the exact limit."""
    f = utrim(poly)
    n = len(f) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    if certify_irreducible_mod_p(f) is not None:
        return True
    if n > exact_degree_limit:
        return None
    facs = factor_rational(f)
    return len(facs) == 1 and facs[0][1] == 1
