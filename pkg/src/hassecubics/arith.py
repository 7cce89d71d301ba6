"""Exact integer, rational and modular arithmetic kernel.

Everything here works on plain Python ints (arbitrary precision) and
fractions.Fraction; nothing ever overflows.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

INF = 10 ** 18  # stand-in for an infinite valuation

# Deterministic Miller-Rabin witnesses: correct for all n < 3.3 * 10^24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_DET_BOUND = 3317044064679887385961981
_SMALL_PRIMES = None
_SMALL_PRIMES_BOUND = 0


def small_primes(bound: int = 100000):
    """Primes below `bound` (cached sieve; bound only grows)."""
    global _SMALL_PRIMES, _SMALL_PRIMES_BOUND
    if _SMALL_PRIMES is None or _SMALL_PRIMES_BOUND < bound:
        sieve = bytearray([1]) * bound
        sieve[0:2] = b"\x00\x00"
        for i in range(2, math.isqrt(bound) + 1):
            if sieve[i]:
                sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
        _SMALL_PRIMES = [i for i in range(bound) if sieve[i]]
        _SMALL_PRIMES_BOUND = bound
    return _SMALL_PRIMES


def is_prime(n: int) -> bool:
    """Primality of |n|: deterministic below 3.3e24, else 64 extra MR rounds."""
    n = abs(n)
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1

    def witness(a):
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            return True
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                return True
        return False

    if not all(witness(a) for a in _MR_WITNESSES):
        return False
    if n >= _MR_DET_BOUND:
        rng = random.Random(n)  # reproducible bases
        return all(witness(rng.randrange(2, n - 1)) for _ in range(64))
    return True


@lru_cache(maxsize=None)
def _require_odd_prime(p: int):
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a|p) for an odd prime p."""
    _require_odd_prime(p)
    a %= p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return -1 if r == p - 1 else 1


def sqrt_mod(a: int, p: int):
    """A square root of a mod p (odd prime), or None if a is a non-residue."""
    _require_odd_prime(p)
    a %= p
    if a == 0:
        return 0
    if legendre(a, p) == -1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # Tonelli-Shanks
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre(z, p) != -1:
        z += 1
    m, c = s, pow(z, q, p)
    t, r = pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, tt = 0, t
        while tt != 1:
            tt = tt * tt % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def val_int(n: int, p: int) -> int:
    """p-adic valuation of an integer; val_int(0) is INF."""
    if n == 0:
        return INF
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def valuation(x, p: int) -> int:
    """Exact p-adic valuation of a nonzero int or Fraction."""
    if x == 0:
        raise ValueError("valuation of 0 is infinite")
    if isinstance(x, Fraction):
        return val_int(x.numerator, p) - val_int(x.denominator, p)
    return val_int(int(x), p)


def isqrt_exact(n: int):
    """Integer square root if n is a perfect square, else None."""
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def is_square(n: int) -> bool:
    return n >= 0 and isqrt_exact(n) is not None


def icbrt(n: int) -> int:
    """Floor (toward zero) integer cube root, sign-aware."""
    if n < 0:
        return -icbrt(-n)
    if n == 0:
        return 0
    x = 1 << ((n.bit_length() + 2) // 3)
    while True:
        y = (2 * x + n // (x * x)) // 3
        if y >= x:
            break
        x = y
    while x * x * x > n:
        x -= 1
    return x


def icbrt_exact(n: int):
    """Integer cube root if n is a perfect cube (any sign), else None."""
    r = icbrt(n)
    return r if r ** 3 == n else None


class FactorizationError(ArithmeticError):
    """A cofactor resisted the factoring strategy in use."""


def factorize(n: int, hints=()) -> dict:
    """Factor |n| by trial division plus hint primes; the leftover cofactor
    must itself be prime.  Inputs here are always smooth or structured, so
    this never needs a general-purpose method."""
    if n == 0:
        raise ValueError("cannot factor 0")
    n = abs(n)
    fac = {}
    for p in sorted(set(hints)):
        if p > 1:
            v = val_int(n, p)
            if v and v < INF:
                fac[p] = fac.get(p, 0) + v
                n //= p ** v
    for p in small_primes():
        if p * p > n:
            break
        v = val_int(n, p)
        if v and v < INF:
            fac[p] = v
            n //= p ** v
    if n > 1:
        if is_prime(n):
            fac[n] = fac.get(n, 0) + 1
        else:
            r = isqrt_exact(n)
            if r is not None and is_prime(r):
                fac[r] = fac.get(r, 0) + 2
            else:
                raise FactorizationError(f"composite cofactor {n} left unfactored")
    return fac


def squarefree_part(n: int, hints=()) -> int:
    """s with n = s * m^2, s squarefree carrying the sign of n."""
    if n == 0:
        raise ValueError("0 has no squarefree part")
    s = -1 if n < 0 else 1
    for p, e in factorize(n, hints).items():
        if e % 2:
            s *= p
    return s


def cubefree_part(n: int, hints=()) -> int:
    """c with n = c * m^3, c cubefree carrying the sign of n."""
    if n == 0:
        raise ValueError("0 has no cubefree part")
    c = -1 if n < 0 else 1
    for p, e in factorize(n, hints).items():
        c *= p ** (e % 3)
    return c


def squarefree_kernel(n: int, hints=()) -> int:
    """Radical of |n| (product of distinct primes)."""
    return math.prod(factorize(n, hints).keys())


@dataclass(frozen=True)
class SquareClass:
    """An element of Q^x / (Q^x)^2, stored as its squarefree representative."""

    representative: int

    def __post_init__(self):
        if self.representative == 0:
            raise ValueError("square class of 0 undefined")

    @staticmethod
    def of(x, hints=()) -> "SquareClass":
        if isinstance(x, Fraction):
            x = x.numerator * x.denominator
        return SquareClass(squarefree_part(int(x), hints))

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        n = self.representative * other.representative
        g = math.gcd(self.representative, other.representative)
        return SquareClass(n // (g * g))

    def __str__(self):
        return str(self.representative)


# Local square classes use fixed representative sets:
#   odd p: {1, u, p, u*p} with u the least non-residue mod p
#   p = 2: {1, -1, 2, -2, 5, -5, 10, -10}
#   real place (p=0 marker): {1, -1}
@dataclass(frozen=True)
class LocalSquareClass:
    p: int  # prime, or 0 for the real place
    representative: int


def least_nonresidue(p: int) -> int:
    u = 2
    while legendre(u, p) != -1:
        u += 1
    return u


# ---- dense polynomial arithmetic over F_p (ascending coefficient lists) ----


def _ptrim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _pmul_mod(f, g, p):
    out = [0] * (len(f) + len(g) - 1) if f and g else []
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _ptrim(out)


def _pdivmod_mod(f, g, p):
    f = list(f)
    q = [0] * max(0, len(f) - len(g) + 1)
    inv = pow(g[-1], -1, p)
    while len(f) >= len(g) and any(f):
        if f[-1] == 0:
            f.pop()
            continue
        k = len(f) - len(g)
        c = f[-1] * inv % p
        q[k] = c
        for i, b in enumerate(g):
            f[i + k] = (f[i + k] - c * b) % p
        f.pop()
    return _ptrim(q), _ptrim(f)


def _pgcd_mod(f, g, p):
    f, g = _ptrim(list(f)), _ptrim(list(g))
    while g:
        f, g = g, _pdivmod_mod(f, g, p)[1]
    if f:
        inv = pow(f[-1], -1, p)
        f = [c * inv % p for c in f]
    return f


def _ppow_mod(f, n, modpoly, p):
    r = [1]
    f = _pdivmod_mod(f, modpoly, p)[1]
    while n:
        if n & 1:
            r = _pdivmod_mod(_pmul_mod(r, f, p), modpoly, p)[1]
        f = _pdivmod_mod(_pmul_mod(f, f, p), modpoly, p)[1]
        n >>= 1
    return r


def poly_roots_mod_p(coeffs, p: int):
    """Roots in F_p of the polynomial with ascending integer coefficients.

    Brute force for small p; for large p, split x^p - x out of f and find the
    linear factors by the usual random-splitting gcd trick (deterministic
    sequence of splitting elements, so results are reproducible).
    """
    f = _ptrim([c % p for c in coeffs])
    if not f:
        raise ValueError("zero polynomial has every root")
    if len(f) == 1:
        return []
    if p < 500:
        return sorted(x for x in range(p) if sum(c * pow(x, i, p) for i, c in enumerate(f)) % p == 0)
    roots = []
    if f[0] == 0:
        roots.append(0)
        while f and f[0] == 0:
            f = f[1:]
    if len(f) <= 1:
        return sorted(roots)
    # g = gcd(x^p - x, f) = product of (x - r) over the distinct roots of f
    xp = _ppow_mod([0, 1], p, f, p)
    xmx = list(xp) + [0] * max(0, 2 - len(xp))
    xmx[1] = (xmx[1] - 1) % p
    g = _pgcd_mod(_ptrim(xmx), f, p)
    stack = [g]
    ctr = 0
    while stack:
        h = stack.pop()
        if len(h) <= 1:
            continue
        if len(h) == 2:
            roots.append(-h[0] * pow(h[1], -1, p) % p)
            continue
        while True:
            ctr += 1
            a = (1103515245 * ctr + 12345) % p
            w = _ppow_mod([a, 1], (p - 1) // 2, h, p)
            w = _ptrim([(c - (1 if i == 0 else 0)) % p for i, c in enumerate(w + [0])])
            d = _pgcd_mod(w, h, p) if w else []
            if d and 1 < len(d) < len(h):
                stack.append(d)
                stack.append(_pdivmod_mod(h, d, p)[0])
                break
    return sorted(roots)


def local_square_class(x, p: int) -> LocalSquareClass:
    """Canonical representative of x in Q_p^x/(Q_p^x)^2 (p=0: real place)."""
    if isinstance(x, Fraction):
        x = x.numerator * x.denominator
    x = int(x)
    if x == 0:
        raise ValueError("0 has no local square class")
    if p == 0:
        return LocalSquareClass(0, 1 if x > 0 else -1)
    if p == 2:
        v = val_int(x, 2)
        u = x >> v
        u_mod = u % 8
        unit = {1: 1, 3: -5, 5: 5, 7: -1}[u_mod]  # class of the odd part mod (Z_2^x)^2
        return LocalSquareClass(2, unit * (2 if v % 2 else 1))
    v = val_int(x, p)
    u = x // p ** v
    rep = 1 if legendre(u, p) == 1 else least_nonresidue(p)
    return LocalSquareClass(p, rep * (p if v % 2 else 1))
