import random
from fractions import Fraction

import pytest

from hassecubics.quadring import (
    CubeClassGroup,
    QuadElem,
    UnsupportedFieldError,
    canonical_associate,
    cube_root,
    cubefree_reduce,
    fundamental_unit,
    has_class_number_one,
    is_cube,
    qval,
    s_units_mod_cubes,
    same_cube_class,
    split_prime,
    split_type,
)


def q(u, v, d=2):
    return QuadElem(u, v, d)


def test_norm_examples():
    assert q(1, 1).norm() == -1  # fundamental unit of Z[sqrt(2)]
    assert q(5, 2).norm() == 17
    a = q(Fraction(3, 4), Fraction(-2, 5))
    assert a.conj().conj() == a


def test_norm_multiplicative():
    rng = random.Random(11)
    for _ in range(100):
        a = q(rng.randrange(-50, 50), rng.randrange(-50, 50))
        b = q(rng.randrange(-50, 50), rng.randrange(-50, 50))
        assert (a * b).norm() == a.norm() * b.norm()


def test_field_ops():
    a, b = q(3, 1), q(5, -2)
    assert (a / b) * b == a
    assert a ** 3 == a * a * a
    assert (a ** -2) * a ** 2 == 1


def test_mixed_d_rejected():
    with pytest.raises(ValueError):
        q(1, 1, 2) * q(1, 1, 3)


def test_fundamental_unit():
    assert fundamental_unit(2) == q(1, 1)
    u3 = fundamental_unit(3)
    assert u3 == QuadElem(2, 1, 3)
    assert u3.norm() == 1
    for d in (2, 3, 6, 7, 11):
        assert fundamental_unit(d).norm() in (1, -1)


def test_split_type_examples():
    st = split_type(2, 2)
    assert st.kind == "ramified" and st.generator == q(0, 1)
    assert split_type(3, 2).kind == "inert"
    st17 = split_type(17, 2)
    assert st17.kind == "split" and st17.generator == q(5, 2)
    assert st17.generator.norm() == 17
    # cross-check with legendre over a range of odd primes
    from hassecubics.arith import legendre, small_primes

    for p in small_primes(200)[2:]:
        st = split_type(p, 2)
        expected = {1: "split", -1: "inert"}[legendre(2, p)]
        assert st.kind == expected


def test_split_prime():
    assert split_prime(17, 2) == (5, 2)
    assert split_prime(7, 2) == (3, 1)
    assert split_prime(2, 2) == (0, 1)
    with pytest.raises(ValueError):
        split_prime(3, 2)


def test_class_number_table():
    assert has_class_number_one(2)
    assert has_class_number_one(3)
    assert has_class_number_one(7)
    assert not has_class_number_one(10)  # h = 2
    assert not has_class_number_one(79)  # h = 3


def test_is_cube():
    eps = q(1, 1)
    assert (eps ** 3) == q(7, 5)
    assert is_cube(eps ** 3)
    assert not is_cube(eps)
    assert not is_cube(eps ** 2)
    assert is_cube(q(-1, 0))  # -1 = (-1)^3
    assert is_cube(q(Fraction(7, 8), Fraction(5, 8)))  # (eps/2)^3


def test_cube_root_roundtrip():
    rng = random.Random(5)
    for _ in range(50):
        b = q(rng.randrange(-30, 30), rng.randrange(-30, 30))
        if not b:
            continue
        r = cube_root(b ** 3)
        assert r is not None and r ** 3 == b ** 3


def test_cube_root_unbalanced():
    eps = q(1, 1)
    big = eps ** 30  # tiny conjugate embedding
    assert cube_root(big) == eps ** 10


def test_cubefree_reduce():
    pi = q(5, 2)
    red = cubefree_reduce(8 * pi)
    assert same_cube_class(red, pi)
    assert qval(red, q(0, 1)) == 0  # the 8 = sqrt(2)^6 factor is gone
    assert cubefree_reduce(red) == red  # idempotent


def test_qval():
    pi, pibar = q(5, 2), q(5, -2)
    g = pi * pi * pibar
    assert qval(g, pi) == 2
    assert qval(g, pibar) == 1
    assert qval(q(7, 0), q(0, 1)) == 0


def test_s_units_mod_cubes_paper_case():
    grp = s_units_mod_cubes([2, 3, 19, 17, 13, 11], 2)
    assert grp.order == 9
    eps, g = grp.generators
    assert eps == q(1, 1)
    assert g == q(5, 2) ** 2 * q(5, -2)
    # membership behaves like a group of exponent 3
    assert grp.contains(g * g)
    assert grp.contains(eps * g)
    assert not grp.contains(q(3, 1))  # norm 7: not supported on S


def test_s_units_inert_only():
    grp = s_units_mod_cubes([3], 2)
    assert grp.order == 3
    assert grp.generators == [q(1, 1)]
    assert is_cube(QuadElem(-1, 0, 2))  # unit norm -1 = (-1)^3 is a cube


def test_s_units_empty():
    grp = s_units_mod_cubes([], 2)
    assert grp.order == 3 and grp.generators == [q(1, 1)]


def test_s_units_generator_invariants():
    from hassecubics.arith import icbrt_exact

    grp = s_units_mod_cubes([2, 3, 19, 17, 13, 11], 2)
    for g in grp.generators:
        n = g.norm()
        assert n.denominator == 1 and icbrt_exact(int(n)) is not None
        assert not is_cube(g)


def test_class_number_one_required():
    with pytest.raises(UnsupportedFieldError):
        s_units_mod_cubes([2], 10)
    with pytest.raises(UnsupportedFieldError):
        QuadElem(1, 1, 5) and s_units_mod_cubes([2], 5)  # d = 1 mod 4


def test_canonical_associate_deterministic():
    eps = q(1, 1)
    a = q(5, 2)
    for k in (-3, -1, 0, 2, 5):
        assert canonical_associate(a * eps ** k) == canonical_associate(a)
