"""Reduction types, Kodaira symbols, Tamagawa numbers and minimal models:
Tate's algorithm in full, over Z for every prime.

The loop below follows the classical step structure.  Translations use the
standard (r, s, t) change of variables; the only rescaling is x -> p^2 x,
y -> p^3 y in the non-minimal case, so the returned model is a p-minimal
integral model reachable from the input by a Q-isomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import INF, legendre, poly_roots_mod_p, sqrt_mod, val_int
from .curves import WeierstrassCurve, integral_model, transformed


@dataclass(frozen=True)
class ReductionData:
    p: int
    kind: str  # good | multiplicative_split | multiplicative_nonsplit | additive
    v_delta: int  # valuation of the minimal discriminant
    kodaira: str
    tamagawa: int
    minimal_model: WeierstrassCurve

    def serialize(self):
        return {
            "p": self.p,
            "kind": self.kind,
            "kodaira": self.kodaira,
            "v_delta": self.v_delta,
            "c_p": self.tamagawa,
        }


def _v(x, p) -> int:
    x = Fraction(x)
    assert x.denominator == 1
    return val_int(x.numerator, p)


def _quad_has_root(a, b, c, p) -> bool:
    """Does a*Y^2 + b*Y + c have a root in F_p?  (a may be 0 mod p.)"""
    a, b, c = a % p, b % p, c % p
    if p == 2:
        return any((a * y * y + b * y + c) % 2 == 0 for y in (0, 1))
    if a == 0:
        return True if b else c == 0
    disc = (b * b - 4 * a * c) % p
    return legendre(disc, p) >= 0 if disc else True


def _quad_double_root(a, b, c, p) -> int:
    """The double root mod p of a*Y^2 + b*Y + c (caller guarantees one)."""
    if p == 2:
        # double root means the poly is a*(Y + r)^2 = a Y^2 + a r^2
        assert b % 2 == 0
        r = c * pow(a, -1, 2) % 2  # r^2 = r over F_2
        return r
    return -b * pow(2 * a, -1, p) % p


def _singular_point(E: WeierstrassCurve, p: int):
    """A singular point (x0, y0) of the reduction mod p (v(disc) > 0)."""
    if p <= 3:
        for x in range(p):
            for y in range(p):
                fx = (E.a1 * y - (3 * x * x + 2 * E.a2 * x + E.a4)) % p
                fy = (2 * y + E.a1 * x + E.a3) % p
                f = (y * y + E.a1 * x * y + E.a3 * y - E.rhs(x)) % p
                if f == 0 and fx == 0 and fy == 0:
                    return x, y
        raise AssertionError("no singular point found")
    # complete the square: (2y + a1 x + a3)^2 = g(x) = 4x^3 + b2 x^2 + 2b4 x + b6
    inv4 = pow(4, -1, p)
    a = int(E.b2) * inv4 % p
    b = int(E.b4) * pow(2, -1, p) % p
    c = int(E.b6) * inv4 % p
    d1 = (a * a - 3 * b) % p
    if d1 == 0:
        x0 = -a * pow(3, -1, p) % p
    else:
        x0 = (9 * c - a * b) * pow(2 * d1, -1, p) % p
    y0 = -(E.a1 * x0 + E.a3) * pow(2, -1, p) % p
    return x0, int(y0)


def _normalize_additive(E: WeierstrassCurve, p: int) -> WeierstrassCurve:
    """Arrange p | a1, a2; p^2 | a3, a4; p^3 | a6 (entry: additive, singular
    point at the origin, past the type IV exit)."""
    if p <= 3:
        for s in range(p):
            for t in range(p * p):
                Et = transformed(E, 0, s, t)
                if (
                    _v(Et.a1, p) >= 1
                    and _v(Et.a2, p) >= 1
                    and _v(Et.a3, p) >= 2
                    and _v(Et.a4, p) >= 2
                    and _v(Et.a6, p) >= 3
                ):
                    return Et
        raise AssertionError("normalization failed")
    s = (-int(E.a1) * pow(2, -1, p)) % p
    E = transformed(E, 0, s, 0)
    t = (-int(E.a3) * pow(2, -1, p * p)) % (p * p)
    E = transformed(E, 0, 0, t)
    assert _v(E.a1, p) >= 1 and _v(E.a2, p) >= 1
    assert _v(E.a3, p) >= 2 and _v(E.a4, p) >= 2 and _v(E.a6, p) >= 3
    return E


def tate_algorithm(E: WeierstrassCurve, p: int) -> ReductionData:
    """Kodaira type, Tamagawa number and local minimal model of E at p."""
    E, _ = integral_model(E)

    while True:
        n = _v(E.discriminant, p)
        if n == 0:
            return ReductionData(p, "good", 0, "I0", 1, E)

        x0, y0 = _singular_point(E, p)
        E = transformed(E, x0, 0, y0)

        if _v(E.b2, p) == 0:
            # multiplicative: split iff T^2 + a1 T - a2 splits mod p
            split = _quad_has_root(1, int(E.a1), -int(E.a2), p)
            c = n if split else (2 if n % 2 == 0 else 1)
            kind = "multiplicative_split" if split else "multiplicative_nonsplit"
            return ReductionData(p, kind, n, f"I{n}", c, E)

        if _v(E.a6, p) < 2:
            return ReductionData(p, "additive", n, "II", 1, E)
        if _v(E.b8, p) < 3:
            return ReductionData(p, "additive", n, "III", 2, E)
        if _v(E.b6, p) < 3:
            c = 3 if _quad_has_root(1, int(E.a3) // p, -int(E.a6) // p ** 2, p) else 1
            return ReductionData(p, "additive", n, "IV", c, E)

        E = _normalize_additive(E, p)

        # P(T) = T^3 + a2/p T^2 + a4/p^2 T + a6/p^3 over F_p
        c2, c1, c0 = (
            int(E.a2) // p,
            int(E.a4) // p ** 2,
            int(E.a6) // p ** 3,
        )
        roots = poly_roots_mod_p([c0, c1, c2, 1], p)
        mult = {r: 1 for r in roots}
        for r in roots:
            # multiplicity via derivative evaluations
            d1 = (3 * r * r + 2 * c2 * r + c1) % p
            if d1 == 0:
                d2 = (6 * r + 2 * c2) % p
                mult[r] = 3 if d2 == 0 else 2
        if all(m == 1 for m in mult.values()) and _cubic_squarefree(c0, c1, c2, p):
            return ReductionData(p, "additive", n, "I0*", 1 + len(roots), E)

        rmult = next(r for r, m in mult.items() if m >= 2)
        E = transformed(E, p * rmult, 0, 0)

        if mult[rmult] == 2:
            # I_m* chain
            m = 1
            q = 2
            while True:
                # odd stage: Y^2 + (a3/p^q) Y - a6/p^2q
                beta, gamma = int(E.a3) // p ** q, -(int(E.a6) // p ** (2 * q))
                if _quad_is_squarefree(1, beta, gamma, p):
                    c = 4 if _quad_has_root(1, beta, gamma, p) else 2
                    return ReductionData(p, "additive", n, f"I{m}*", c, E)
                y1 = _quad_double_root(1, beta, gamma, p)
                E = transformed(E, 0, 0, p ** q * y1)
                m += 1
                # even stage: (a2/p) X^2 + (a4/p^{q+1}) X + a6/p^{2q+1}
                alpha = int(E.a2) // p
                beta = int(E.a4) // p ** (q + 1)
                gamma = int(E.a6) // p ** (2 * q + 1)
                if _quad_is_squarefree(alpha, beta, gamma, p):
                    c = 4 if _quad_has_root(alpha, beta, gamma, p) else 2
                    return ReductionData(p, "additive", n, f"I{m}*", c, E)
                x1 = _quad_double_root(alpha, beta, gamma, p)
                E = transformed(E, p ** q * x1, 0, 0)
                m += 1
                q += 1

        # triple root: now p^2 | a2, p^3 | a4, p^4 | a6
        beta, gamma = int(E.a3) // p ** 2, -(int(E.a6) // p ** 4)
        if _quad_is_squarefree(1, beta, gamma, p):
            c = 3 if _quad_has_root(1, beta, gamma, p) else 1
            return ReductionData(p, "additive", n, "IV*", c, E)
        y1 = _quad_double_root(1, beta, gamma, p)
        E = transformed(E, 0, 0, p ** 2 * y1)

        if _v(E.a4, p) < 4:
            return ReductionData(p, "additive", n, "III*", 2, E)
        if _v(E.a6, p) < 6:
            return ReductionData(p, "additive", n, "II*", 1, E)

        # non-minimal: rescale and restart
        E = transformed(E, 0, 0, 0, p)
        assert E.is_integral()


def _cubic_squarefree(c0, c1, c2, p) -> bool:
    """Is T^3 + c2 T^2 + c1 T + c0 squarefree over F_p (no repeated roots in
    the algebraic closure)?"""
    from .arith import _pgcd_mod, _ptrim

    f = _ptrim([c0 % p, c1 % p, c2 % p, 1])
    fp = _ptrim([c1 % p, (2 * c2) % p, 3 % p])
    if not fp:
        return False  # derivative vanished (char 3, special shape): repeated roots
    return len(_pgcd_mod(f, fp, p)) <= 1


def _quad_is_squarefree(a, b, c, p) -> bool:
    """Is a Y^2 + b Y + c (a a unit mod p) squarefree over F_p?"""
    if p == 2:
        return b % 2 == 1
    return (b * b - 4 * a * c) % p != 0


def reduction_type(E: WeierstrassCurve, p: int) -> ReductionData:
    """Independent quick classifier (kind only; the returned ReductionData
    carries kind plus the minimal v(disc), with kodaira/tamagawa unset).

    For p >= 5 this avoids Tate's loop entirely: it strips u = p^k
    rescalings off (c4, c6, disc) and decides split/non-split through the
    tangent slope at the node.  For p <= 3 minimality testing is genuinely
    Tate-shaped, so the classifier falls back to the full algorithm.
    """
    Ei, _ = integral_model(E)
    if p <= 3:
        rd = tate_algorithm(Ei, p)
        return ReductionData(p, rd.kind, rd.v_delta, "", 0, rd.minimal_model)
    vD = _v(Ei.discriminant, p)
    vc4 = _v(Ei.c4, p)
    vc6 = _v(Ei.c6, p)
    k = min(vD // 12, vc4 // 4, vc6 // 6)
    vD -= 12 * k
    vc4 -= 4 * k
    if vD == 0:
        return ReductionData(p, "good", 0, "", 0, Ei)
    if vc4 > 0:
        return ReductionData(p, "additive", vD, "", 0, Ei)
    # nodal: y^2 = x^3 + Ax + B with A = -27 c4 / u^4, B = -54 c6 / u^6;
    # the double root is x0 = -3B/(2A), slopes^2 = 3 x0
    A = -27 * int(Ei.c4) // p ** (4 * k) % p
    B = -54 * int(Ei.c6) // p ** (6 * k) % p
    x0 = -3 * B * pow(2 * A, -1, p) % p
    split = legendre(3 * x0 % p, p) == 1
    kind = "multiplicative_split" if split else "multiplicative_nonsplit"
    return ReductionData(p, kind, vD, "", 0, Ei)


def minimal_model(E: WeierstrassCurve, p: int) -> WeierstrassCurve:
    """A p-minimal integral model (translations and p-power rescalings only)."""
    return tate_algorithm(E, p).minimal_model


def global_minimal_model(E: WeierstrassCurve, hint_primes=()) -> WeierstrassCurve:
    """Global minimal model over Q (exists: class number 1), with the usual
    reduced coefficients a1, a3 in {0, 1} and a2 in {-1, 0, 1}.

    hint_primes: known prime factors of the discriminant (the curve family
    has closed-form support, which avoids factoring large integers)."""
    from .arith import factorize

    Ei, _ = integral_model(E)
    disc = int(Ei.discriminant)
    for p in sorted(factorize(disc, hints=hint_primes).keys()):
        Ei = tate_algorithm(Ei, p).minimal_model
    a1 = int(Ei.a1)
    Ei = transformed(Ei, 0, (a1 % 2 - a1) // 2, 0)
    a2 = int(Ei.a2)
    m = a2 % 3
    target = m if m <= 1 else m - 3
    Ei = transformed(Ei, (target - a2) // 3, 0, 0)
    a3 = int(Ei.a3)
    Ei = transformed(Ei, 0, 0, (a3 % 2 - a3) // 2)
    assert Ei.is_integral()
    return Ei


def tamagawa_product(E: WeierstrassCurve, bad_primes) -> int:
    out = 1
    for p in sorted(set(bad_primes)):
        out *= tate_algorithm(E, p).tamagawa
    return out
