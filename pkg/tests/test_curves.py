import random
from fractions import Fraction

import pytest

from hassecubics.curves import (
    CurvePoint,
    ModP,
    O,
    WeierstrassCurve,
    count_points_mod_p,
    has_rational_3_torsion,
    integral_model,
    isomorphism_scale,
    model_AB,
    model_C,
    phi_apply,
    phi_descriptor,
    phi_dual_descriptor,
    point_add,
    point_neg,
    psi_apply,
    psi_descriptor,
    psi_dual_apply,
    psi_dual_descriptor,
    psi_j0_descriptor,
    reduce_mod_p,
    scalar_mul,
    shift_two_torsion,
    torsion_subgroup,
    transformed,
)


def curve_Eh(h):
    return model_AB(-216, h * (h - 6) ** 2, label=f"E_{h}")


def test_model_builders():
    E = curve_Eh(19)
    assert E.a2 == -216 and E.a4 == 432 * 19 * 13 ** 2 and E.a6 == -216 * (19 * 169) ** 2
    E1 = model_C(1)
    assert E1.discriminant == -432
    with pytest.raises(ValueError):
        model_C(0)
    with pytest.raises(ValueError):
        model_AB(-27, 0)  # B = 0 is singular for this family shape


def test_discriminant_closed_form():
    rng = random.Random(2)
    for _ in range(50):
        h = rng.randrange(-2000, 2000)
        if h in (0, 2, 6, 8):
            continue
        E = curve_Eh(h)
        expected = -(2 ** 10) * 3 ** 9 * h ** 3 * (h - 2) ** 2 * (h - 6) ** 6 * (h - 8)
        assert E.discriminant == expected


def test_discriminant_AB_form():
    rng = random.Random(3)
    for _ in range(50):
        A, B = rng.randrange(-50, 50), rng.randrange(-50, 50)
        if A == 0 or B == 0 or 4 * A + 27 * B == 0:
            continue
        E = model_AB(A, B)
        assert E.discriminant == -16 * A * A * B ** 3 * (4 * A + 27 * B)


def test_group_law_basics():
    E = model_AB(-2, 2)
    P = CurvePoint(Fraction(3), Fraction(5))
    assert E.contains(P)
    assert point_add(E, P, O) == P
    assert point_add(E, P, point_neg(E, P)) == O
    assert scalar_mul(E, 3, P) == point_add(E, P, point_add(E, P, P))


def test_two_torsion_addition():
    E = curve_Eh(19)
    shifted, r = shift_two_torsion(E)
    assert r == 6 * 13 ** 2
    T = CurvePoint(Fraction(0), Fraction(0))
    assert shifted.contains(T)
    assert point_add(shifted, T, T) == O


def test_shift_two_torsion_coefficients():
    h = 19
    shifted, r = shift_two_torsion(curve_Eh(h))
    assert shifted.a4 == 108 * (h - 2) * (h - 6) ** 3
    assert shifted.a2 == 18 * (h - 6) ** 2 - 216
    assert shifted.a6 == 0
    assert shifted.discriminant == curve_Eh(h).discriminant


def test_psi_lands_on_codomain():
    desc = psi_descriptor(-2, 2)
    P = CurvePoint(Fraction(3), Fraction(5))
    Q = psi_apply(desc, P)
    assert desc.codomain.contains(Q)
    assert Q == CurvePoint(Fraction(19), Fraction(-215))
    assert psi_apply(desc, O) == O


def test_psi_kernel_maps_to_O():
    # kernel x = 0 is rational when A is a square: A = 9, B = 1
    desc = psi_descriptor(9, 1)
    K = CurvePoint(Fraction(0), Fraction(3))  # y^2 = 9*1
    assert desc.domain.contains(K)
    assert psi_apply(desc, K) == O


def test_psi_two_torsion_of_E19():
    E = curve_Eh(19)
    desc = psi_descriptor(-216, 19 * 13 ** 2)
    T = CurvePoint(Fraction(6 * 13 ** 2), Fraction(0))
    assert E.contains(T)
    Q = psi_apply(desc, T)
    assert desc.codomain.contains(Q)
    assert point_add(desc.codomain, Q, Q) == O  # still 2-torsion


def _random_points_mod_p(E, p, count, seed=0):
    Em = reduce_mod_p(E, p)
    pts = []
    x = seed
    while len(pts) < count:
        x += 1
        xm = ModP(x, p)
        rhs = Em.rhs(xm)
        from hassecubics.arith import sqrt_mod

        r = sqrt_mod(rhs.v, p)
        if r is not None:
            pts.append(CurvePoint(xm, ModP(r, p)))
    return Em, pts


@pytest.mark.parametrize("p", [101, 103, 107])
def test_dual_composition_is_multiplication_by_3(p):
    desc = psi_descriptor(-216, 19 * 13 ** 2)
    Em, pts = _random_points_mod_p(desc.domain, p, 20)
    # rebuild descriptors mod p by reducing parameters
    A, B = ModP(-216, p), ModP(19 * 13 ** 2, p)
    from hassecubics.curves import IsogenyDescriptor

    Ebarm = reduce_mod_p(desc.codomain, p)
    dm = IsogenyDescriptor("psi3", Em, Ebarm, (A, B))
    dmdual = IsogenyDescriptor("psi3_dual", Ebarm, Em, (-27 * A, 4 * A + 27 * B))
    for P in pts:
        Q = psi_apply(dm, P)
        R = psi_apply(dmdual, Q)
        assert R == scalar_mul(Em, 3, P)
    # and the other composite on Ebar
    for P in pts:
        Q = psi_apply(dm, P)
        assert psi_apply(dm, psi_apply(dmdual, Q)) == scalar_mul(Ebarm, 3, Q)


def test_dual_composition_over_Q():
    desc = psi_descriptor(-2, 2)
    P = CurvePoint(Fraction(3), Fraction(5))
    Q = psi_apply(desc, P)
    assert psi_dual_apply(desc, Q) == scalar_mul(desc.domain, 3, P)


def test_j0_dual_composition():
    desc = psi_j0_descriptor(1)
    P = CurvePoint(Fraction(2), Fraction(3))
    Q = psi_apply(desc, P)
    assert desc.codomain.contains(Q)
    dual = psi_dual_descriptor(desc)
    assert psi_apply(dual, Q) == scalar_mul(desc.domain, 3, P)


def test_phi_isogeny():
    h = 19
    shifted, _ = shift_two_torsion(curve_Eh(h))
    desc = phi_descriptor(shifted)
    a, b = desc.params
    assert desc.codomain.a2 == 432 - 36 * (h - 6) ** 2
    assert desc.codomain.a4 == -108 * h ** 3 * (h - 8)
    assert phi_apply(shifted, CurvePoint(Fraction(0), Fraction(0))) == O
    # phi-hat o phi = [2] at a few exact points mod p
    p = 101
    Em = reduce_mod_p(shifted, p)
    from hassecubics.curves import IsogenyDescriptor

    am, bm = ModP(int(a), p), ModP(int(b), p)
    Edm = reduce_mod_p(desc.codomain, p)
    dm = IsogenyDescriptor("phi2", Em, Edm, (am, bm))
    dmd = IsogenyDescriptor("phi2_dual", Edm, Em, (-2 * am, am * am - 4 * bm))
    _, pts = _random_points_mod_p(shifted, p, 20)
    for P in pts:
        Q = psi_apply(dm, P)
        assert Edm.contains(Q)
        R = psi_apply(dmd, Q)
        assert R == scalar_mul(Em, 2, P)


def test_count_points():
    E19 = curve_Eh(19)
    assert count_points_mod_p(E19, 5) == 6
    E = WeierstrassCurve.from_coeffs([0, 0, 0, 1, 0])  # y^2 = x^3 + x
    assert count_points_mod_p(E, 3) == 4
    # Lagrange: torsion order divides good-prime counts
    tor = torsion_subgroup(E19)
    for p in (29, 31, 37):
        assert count_points_mod_p(E19, p) % tor.order == 0


def test_count_points_brute_agreement():
    E = model_AB(-2, 2)
    for p in (5, 7, 11, 13):
        Em = reduce_mod_p(E, p)
        n = 1
        for x in range(p):
            for y in range(p):
                if Em.contains(CurvePoint(ModP(x, p), ModP(y, p))):
                    n += 1
        assert count_points_mod_p(E, p) == n


def test_torsion_of_family_curves():
    assert torsion_subgroup(curve_Eh(19)).structure == "Z/2Z"
    desc = psi_descriptor(-216, 19 * 13 ** 2)
    tor = torsion_subgroup(desc.codomain)
    assert tor.structure == "Z/2Z"
    assert not has_rational_3_torsion(curve_Eh(19))
    assert not has_rational_3_torsion(desc.codomain)


def test_torsion_known_curves():
    assert torsion_subgroup(model_C(1)).structure == "Z/6Z"
    E = WeierstrassCurve.from_coeffs([0, 0, 0, -1, 0])  # y^2 = x^3 - x
    assert torsion_subgroup(E).structure == "Z/2Z x Z/2Z"
    E4 = WeierstrassCurve.from_coeffs([0, 0, 0, 4, 0])  # y^2 = x^3 + 4x: Z/4
    assert torsion_subgroup(E4).structure == "Z/4Z"
    E5 = WeierstrassCurve.from_coeffs([0, -1, 1, 0, 0])  # Z/5
    assert torsion_subgroup(E5).structure == "Z/5Z"


def test_transformed_invariants():
    E = curve_Eh(19)
    E2 = transformed(E, r=3, s=1, t=-2, u=1)
    assert E2.discriminant == E.discriminant
    assert E2.c4 == E.c4 and E2.c6 == E.c6
    E3 = transformed(E, u=2)
    assert E3.discriminant == E.discriminant / 2 ** 12
    assert E3.c4 == E.c4 / 16


def test_integral_model():
    E = WeierstrassCurve.from_coeffs([0, Fraction(1, 2), 0, Fraction(3, 4), 1])
    Ei, u = integral_model(E)
    assert Ei.is_integral()
    assert isomorphism_scale(E, Ei) is not None


def test_isomorphism_scale():
    E = curve_Eh(19)
    E2 = transformed(E, r=5, s=2, t=1, u=Fraction(1, 3))
    u = isomorphism_scale(E, E2)
    assert u == Fraction(1, 3)
    assert isomorphism_scale(E, curve_Eh(27)) is None


def test_serialization():
    E = curve_Eh(19)
    assert E.serialize() == ["0", "-216", "0", str(432 * 19 * 169), str(-216 * (19 * 169) ** 2)]
