"""Exact arithmetic in Q(sqrt(d)) for squarefree d > 1 with d = 2, 3 mod 4,
so the ring of integers is Z[sqrt(d)].  Only class number 1 is supported:
that makes every prime ideal principal and keeps the S-unit computation
elementary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import (
    factorize,
    icbrt_exact,
    is_prime,
    is_square,
    legendre,
    small_primes,
    val_int,
)


class UnsupportedFieldError(ValueError):
    """d outside the supported shape (non-squarefree, d = 1 mod 4, h > 1)."""


def _check_d(d: int):
    if d <= 1:
        raise UnsupportedFieldError("need squarefree d > 1")
    if d % 4 == 1:
        raise UnsupportedFieldError("d = 1 mod 4 has a half-integral basis; out of scope")
    for p, e in factorize(d).items():
        if e > 1:
            raise UnsupportedFieldError(f"{d} is not squarefree")


class QuadElem:
    """u + v*sqrt(d) with rational u, v."""

    __slots__ = ("u", "v", "d")

    def __init__(self, u, v, d: int):
        self.u = Fraction(u)
        self.v = Fraction(v)
        self.d = d

    def _same(self, other):
        if not isinstance(other, QuadElem):
            return QuadElem(other, 0, self.d)
        if other.d != self.d:
            raise ValueError("mixed base fields")
        return other

    def __add__(self, other):
        o = self._same(other)
        return QuadElem(self.u + o.u, self.v + o.v, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadElem(-self.u, -self.v, self.d)

    def __sub__(self, other):
        return self + (-self._same(other))

    def __rsub__(self, other):
        return self._same(other) - self

    def __mul__(self, other):
        o = self._same(other)
        return QuadElem(
            self.u * o.u + self.d * self.v * o.v,
            self.u * o.v + self.v * o.u,
            self.d,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._same(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError
        num = self * o.conj()
        return QuadElem(num.u / n, num.v / n, self.d)

    def __pow__(self, n: int):
        if n < 0:
            return (QuadElem(1, 0, self.d) / self) ** (-n)
        r = QuadElem(1, 0, self.d)
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.u == other and self.v == 0
        return (
            isinstance(other, QuadElem)
            and self.d == other.d
            and self.u == other.u
            and self.v == other.v
        )

    def __hash__(self):
        return hash((self.u, self.v, self.d))

    def __bool__(self):
        return self.u != 0 or self.v != 0

    def conj(self) -> "QuadElem":
        return QuadElem(self.u, -self.v, self.d)

    def norm(self) -> Fraction:
        return self.u * self.u - self.d * self.v * self.v

    def trace(self) -> Fraction:
        return 2 * self.u

    def is_integral(self) -> bool:
        return self.u.denominator == 1 and self.v.denominator == 1

    def is_rational(self) -> bool:
        return self.v == 0

    def __repr__(self):
        return f"QuadElem({self.u}, {self.v}, d={self.d})"

    def __str__(self):
        if self.v == 0:
            return str(self.u)
        vs = "" if self.v == 1 else ("-" if self.v == -1 else f"{self.v}*")
        if self.u == 0:
            return f"{vs}sqrt({self.d})"
        sign = "+" if self.v > 0 else "-"
        va = abs(self.v)
        vs = "" if va == 1 else f"{va}*"
        return f"{self.u} {sign} {vs}sqrt({self.d})"


def fundamental_unit(d: int) -> QuadElem:
    """Fundamental unit of Z[sqrt(d)] via the continued fraction of sqrt(d)."""
    _check_d(d)
    a0 = math.isqrt(d)
    m, c, a = 0, 1, a0
    p_prev, p = 1, a0
    q_prev, q = 0, 1
    while p * p - d * q * q not in (1, -1):
        m = a * c - m
        c = (d - m * m) // c
        a = (a0 + m) // c
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
    return QuadElem(p, q, d)


@dataclass(frozen=True)
class PrimeSplitting:
    p: int
    kind: str  # "split" | "inert" | "ramified"
    generator: QuadElem | None
    conjugate_generator: QuadElem | None


def split_prime(p: int, d: int):
    """Integer (k, l) with k^2 - d*l^2 = +-p, first hit scanning l = 0, 1, ...

    A solution exists whenever p is split or ramified and the prime above p
    is principal; a reduced associate has sqrt(p) <= |sigma1| < eps*sqrt(p),
    which bounds l by (e1+1)*sqrt(p)/(2*sqrt(d)), so the scan is complete.
    """
    _check_d(d)
    eps = fundamental_unit(d)
    e1 = float(eps.u) + float(eps.v) * math.sqrt(d)
    lmax = int((e1 + 1) * math.sqrt(p) / (2 * math.sqrt(d))) + 2
    for l in range(0, lmax + 1):
        t = d * l * l
        for s in (t - p, t + p):  # prefer the smaller k
            if s >= 0 and is_square(s):
                return math.isqrt(s), l
    raise ValueError(f"no element of norm +-{p} in Z[sqrt({d})]")


def split_type(p: int, d: int) -> PrimeSplitting:
    """Splitting behaviour of p in Z[sqrt(d)], with generators when principal."""
    _check_d(d)
    if p == 2 or d % p == 0:
        kind = "ramified"  # disc = 4d, so 2 always ramifies here
    elif legendre(d % p, p) == 1:
        kind = "split"
    else:
        return PrimeSplitting(p, "inert", None, None)
    try:
        k, l = split_prime(p, d)
    except ValueError:
        raise UnsupportedFieldError(
            f"prime above {p} in Q(sqrt({d})) is not principal (class number > 1)"
        )
    g = QuadElem(k, l, d)
    return PrimeSplitting(p, kind, g, g.conj())


def has_class_number_one(d: int) -> bool:
    """Minkowski-bound check: every prime below sqrt(d) must be inert or
    generated by an element of norm +-p."""
    _check_d(d)
    bound = math.isqrt(4 * d) // 2 + 1
    for p in small_primes(bound + 10):
        if p > bound:
            break
        if not (p == 2 or d % p == 0 or legendre(d % p, p) == 1):
            continue  # inert
        try:
            split_prime(p, d)
        except ValueError:
            return False
    return True


def _require_h1(d: int):
    if not has_class_number_one(d):
        raise UnsupportedFieldError(f"Q(sqrt({d})) has class number > 1; unsupported")


def _clear_denominators(a: QuadElem) -> QuadElem:
    den = math.lcm(a.u.denominator, a.v.denominator)
    return a * den ** 3  # cube keeps the cube class


def is_cube(a: QuadElem) -> bool:
    """Exact test for a = b^3 with b in Q(sqrt(d))."""
    if not a:
        return True
    b = cube_root(a)
    return b is not None


def cube_root(a: QuadElem):
    """The cube root of a in Q(sqrt(d)) if one exists, else None."""
    from .arith import icbrt

    if not a:
        return QuadElem(0, 0, a.d)
    den = math.lcm(a.u.denominator, a.v.denominator)
    w = a * den ** 3  # integral; cube iff a is, root scales back by den
    U, V, d = int(w.u), int(w.v), w.d
    n = U * U - d * V * V
    if n == 0 or icbrt_exact(n) is None:
        return None
    # Integer-precision embeddings: |sigma1| >= |N|/|sigma2| can be as small
    # as ~2^-digs, so carry 2*digs + 64 bits.
    digs = max(abs(U), abs(V)).bit_length()
    prec = 2 * digs + 64
    S = 1 << prec
    R = math.isqrt(d * S * S)
    A = U * S + V * R  # ~ sigma1(w) * S
    Bv = U * S - V * R
    x3 = icbrt(A * S * S)  # ~ sigma1(b) * S
    y3 = icbrt(Bv * S * S)
    x = _round_div(x3 + y3, 2 * S)
    y = _round_div(x3 - y3, 2 * R)  # (sigma1 - sigma2)/2 = y*sqrt(d)
    for dx in (0, 1, -1):
        for dy in (0, 1, -1):
            cand = QuadElem(x + dx, y + dy, d)
            if cand ** 3 == w:
                return QuadElem(Fraction(cand.u, den), Fraction(cand.v, den), d)
    return None


def _round_div(a: int, b: int) -> int:
    if b < 0:
        a, b = -a, -b
    return (a + b // 2) // b if a >= 0 else -((-a + b // 2) // b)


def unit_exponent(a: QuadElem) -> int:
    """k with a = +-eps^k * (reduced associate), reduced meaning
    sqrt(|N|) <= |sigma1| < eps * sqrt(|N|)."""
    if not a:
        raise ValueError("unit exponent of 0")
    eps = fundamental_unit(a.d)
    loge = math.log(float(eps.u) + float(eps.v) * math.sqrt(a.d))
    try:
        # float first guess; the exact loops below absorb any error
        s1 = abs(float(a.u) + float(a.v) * math.sqrt(a.d))
        n = abs(float(a.norm()))
        k = math.floor((math.log(s1) - 0.5 * math.log(n)) / loge + 1e-9) if s1 > 0 and n > 0 else 0
    except (OverflowError, ValueError):
        k = 0
    # fix up float error exactly
    probe = a * (QuadElem(1, 0, a.d) / eps) ** k
    while _sigma1_sq_cmp(probe, abs(probe.norm())) < 0:
        k -= 1
        probe = probe * eps
    eps_probe = probe * (QuadElem(1, 0, a.d) / eps)
    while _sigma1_sq_cmp(eps_probe, abs(eps_probe.norm())) >= 0:
        k += 1
        probe, eps_probe = eps_probe, eps_probe * (QuadElem(1, 0, a.d) / eps)
    return k


def _sigma1_sq_cmp(a: QuadElem, n) -> int:
    """Compare sigma1(a)^2 with n exactly (sign of sigma1(a)^2 - n)."""
    # sigma1(a)^2 = u^2 + d v^2 + 2uv sqrt(d)
    lhs = a.u * a.u + a.d * a.v * a.v - n
    rhs = -2 * a.u * a.v  # compare lhs with rhs*sqrt(d)
    if rhs <= 0 <= lhs:
        return 1 if (lhs, rhs) != (0, 0) else 0
    if lhs <= 0 <= rhs and (lhs, rhs) != (0, 0):
        return -1
    s = 1 if lhs > 0 else -1
    diff = lhs * lhs - a.d * rhs * rhs
    return s if diff > 0 else (-s if diff < 0 else 0)


def canonical_associate(a: QuadElem) -> QuadElem:
    """Deterministic associate: reduced via eps, with positive embedding."""
    if not a:
        return a
    eps = fundamental_unit(a.d)
    k = unit_exponent(a)
    out = a * (QuadElem(1, 0, a.d) / eps) ** k
    if float(out.u) + float(out.v) * math.sqrt(a.d) < 0:
        out = -out
    return out


def qval(a: QuadElem, gen: QuadElem) -> int:
    """Valuation of a at the prime (gen): exact division count; a integral."""
    if not a:
        raise ValueError("valuation of 0")
    if not a.is_integral():
        raise ValueError("qval needs an integral element")
    v = 0
    while True:
        q = a / gen
        if q.is_integral():
            a, v = q, v + 1
        else:
            return v


def cubefree_reduce(a: QuadElem, hint_primes=()) -> QuadElem:
    """Strip cube factors (rational primes, split/ramified primes, units);
    returns the canonical cubefree associate of the class of a."""
    _require_h1(a.d)
    a = _clear_denominators(a)
    # rational content first
    g = math.gcd(int(a.u), int(a.v))
    if g > 1:
        for p, e in factorize(g, hint_primes).items():
            if e >= 3:
                a = a * Fraction(1, p ** (3 * (e // 3)))
    n = int(a.norm())
    fac = factorize(n, hint_primes)
    for p in fac:
        st = split_type(p, a.d)
        if st.kind == "inert":
            continue
        for gen in {st.generator, st.conjugate_generator}:
            v = qval(a, gen)
            if v >= 3:
                a = a / gen ** (3 * (v // 3))
    return canonical_associate(a)


def same_cube_class(a: QuadElem, b: QuadElem) -> bool:
    return is_cube(a * b * b)  # a/b = a*b^2 / b^3


@dataclass
class CubeClassGroup:
    """Subgroup of L^x/(L^x)^3 given by independent generators."""

    d: int
    generators: list

    @property
    def order(self) -> int:
        return 3 ** len(self.generators)

    def elements(self):
        """All class representatives (not reduced; products of generators)."""
        out = [QuadElem(1, 0, self.d)]
        for g in self.generators:
            out = [e * g ** i for e in out for i in range(3)]
        return out

    def contains(self, t: QuadElem) -> bool:
        return any(same_cube_class(t, e) for e in self.elements())


def s_units_mod_cubes(S, d: int, hint_primes=()) -> CubeClassGroup:
    """Generators of the classes of L^x/(L^x)^3 supported on the primes over
    S with cube norm.

    Inert primes contribute nothing (their norm exponent is 2a, forcing
    a = 0 mod 3), and a principal ramified prime pi has norm +-p, forcing
    exponent 0 mod 3 as well.  A split prime p = pi*pibar contributes the
    single class pi^2*pibar.  The unit group always contributes the
    fundamental unit, whose norm +-1 is a cube.
    """
    _require_h1(d)
    gens = [fundamental_unit(d)]
    for p in sorted(set(abs(int(q)) for q in S)):
        if not is_prime(p):
            raise ValueError(f"S must consist of primes, got {p}")
        st = split_type(p, d)
        if st.kind != "split":
            continue
        g = st.generator * st.generator * st.conjugate_generator
        gens.append(cubefree_reduce(g, hint_primes=tuple(hint_primes) + (p,)))
    return CubeClassGroup(d, gens)
