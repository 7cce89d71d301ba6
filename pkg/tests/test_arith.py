import random
from fractions import Fraction

import pytest

from hassecubics.arith import (
    FactorizationError,
    LocalSquareClass,
    SquareClass,
    cubefree_part,
    factorize,
    icbrt_exact,
    is_prime,
    legendre,
    local_square_class,
    small_primes,
    sqrt_mod,
    squarefree_part,
    valuation,
)


def test_is_prime_examples():
    assert is_prime(19)
    assert not is_prime(1)
    assert is_prime(119299)  # appears among the admissible h values


def test_is_prime_matches_trial_division():
    primes = set(small_primes(100000))
    for n in range(2, 100000):
        assert is_prime(n) == (n in primes)


def test_is_prime_large():
    assert is_prime(2 ** 89 - 1)  # Mersenne prime
    assert not is_prime(2 ** 89 + 1)


def test_legendre_examples():
    assert legendre(2, 3) == -1
    assert legendre(0, 7) == 0
    assert legendre(6, 19) == 1


def test_legendre_rejects_bad_modulus():
    with pytest.raises(ValueError):
        legendre(3, 15)
    with pytest.raises(ValueError):
        legendre(3, 2)


def test_legendre_multiplicative():
    rng = random.Random(1)
    for _ in range(200):
        p = random.Random(rng.random()).choice([3, 7, 19, 101, 65537])
        a, b = rng.randrange(1, p), rng.randrange(1, p)
        if a % p and b % p:
            assert legendre(a * b, p) == legendre(a, p) * legendre(b, p)


def test_sqrt_mod():
    r = sqrt_mod(72, 17)
    assert r is not None and r * r % 17 == 72 % 17
    assert r in (2, 15)  # 72 = 4 mod 17
    assert sqrt_mod(1, 19) in (1, 18)
    assert sqrt_mod(2, 3) is None


def test_sqrt_mod_random_roundtrip():
    rng = random.Random(7)
    for p in (13, 17, 97, 104729):
        for _ in range(50):
            a = rng.randrange(p)
            r = sqrt_mod(a, p)
            if r is None:
                assert legendre(a, p) == -1
            else:
                assert r * r % p == a % p


def test_valuation():
    assert valuation(-432, 2) == 4
    assert valuation(Fraction(1, 9), 3) == -2
    h = 19
    delta = -(2 ** 10) * 3 ** 9 * h ** 3 * (h - 2) ** 2 * (h - 6) ** 6 * (h - 8)
    assert valuation(delta, 19) == 3
    with pytest.raises(ValueError):
        valuation(0, 5)


def test_squarefree_and_cubefree_part():
    assert squarefree_part(-108 * 19 ** 3 * 11) == -3 * 19 * 11
    assert squarefree_part(8) == 2
    assert cubefree_part(16) == 2
    rng = random.Random(3)
    for _ in range(100):
        n = rng.randrange(1, 10 ** 6)
        s = squarefree_part(n)
        m2 = n // s
        assert s * m2 == n and icbrt_exact(m2 ** 3) is not None  # m2 integral
        r = 1
        k = 2
        while k * k <= abs(s):
            assert s % (k * k) != 0
            k += 1
        c = cubefree_part(n)
        assert n % c == 0


def test_factorize_with_hints():
    h = 119299
    n = -108 * h ** 3 * (h - 8)
    fac = factorize(n, hints=(h, h - 8))
    assert fac[h] == 3 and fac[h - 8] == 1


def test_factorize_unfactorable():
    p = 2 ** 89 - 1
    with pytest.raises(FactorizationError):
        factorize(p * (2 ** 107 - 1))


def test_square_class_group_law():
    a = SquareClass.of(12)  # 3
    b = SquareClass.of(-27)  # -3
    assert (a * b).representative == -1


def test_local_square_class():
    assert local_square_class(7, 2) == LocalSquareClass(2, -1)
    assert local_square_class(5, 2) == LocalSquareClass(2, 5)
    assert local_square_class(8, 2) == LocalSquareClass(2, 2)
    assert local_square_class(-4, 0) == LocalSquareClass(0, -1)
    assert local_square_class(9, 7) == LocalSquareClass(7, 1)
    assert local_square_class(21, 7).representative % 7 == 0
