import math
import random
from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quadode.errors import NotInFamily, RadicandNegative
from quadode.family import (
    CONVENTION,
    Family,
    corrupted_family,
    forward_poly,
    from_A,
    from_B,
    from_U,
    ode_rhs,
    recognize_poly,
    recognize_radical,
)
from quadode.parser import RadicalProduct, parse_poly
from quadode.polynomial import Poly

from conftest import polys, random_poly, random_rational, rationals

X = Poly.x()


def test_from_U_examples():
    fam = from_U(Poly([1, 0, 1]))
    assert fam.A == Poly([6, 0, 12])
    assert fam.polynomial_rhs() == Poly([3, 0, 9, 0, 6])
    fam = from_U(Poly.monomial(1, 3))
    assert fam.A == Poly([2, 0, 0, 0, 30])
    assert fam.U * fam.A == Poly.monomial(2, 3) + Poly.monomial(30, 7)
    fam = from_U(Poly([Fr(5, 3)]))
    assert fam.A == Poly([2]) and fam.polynomial_rhs() == Poly([Fr(5, 3)])
    with pytest.raises(ValueError):
        from_U(Poly())


@given(e=rationals, g=rationals)
def test_printed_quartic_rhs_is_half_of_U_times_A(e, g):
    # the published right-hand side for the quartic family with f = 0
    printed = Poly([g + 2 * e * g * g, 0, e + 8 * e * e * g, 0, 6 * e**3])
    if e == 0 and g == 0:
        return
    assert from_U(Poly([g, 0, e])).polynomial_rhs() == printed


def test_printed_pure_cubic_coefficient_is_an_erratum():
    for d in (Fr(1), Fr(-2, 3), Fr(5)):
        P = from_U(Poly.monomial(d, 3)).U * from_U(Poly.monomial(d, 3)).A
        assert P == Poly.monomial(2 * d, 3) + Poly.monomial(30 * d**3, 7)
        assert P != Poly.monomial(2 * d, 3) + Poly.monomial(15 * d**3, 7)


@given(U=polys(6, nonzero_lead=True))
def test_A_identity_exact(U):
    if U.is_zero():
        return
    fam = from_U(U)
    assert fam.A - (2 + 2 * U.derive() ** 2 + 2 * U * U.derive(2)) == Poly()


def test_from_B_examples():
    C1, C2, g1, f1 = Fr(1, 2), Fr(-3, 7), Fr(2), Fr(6)
    B = Poly([2 * C1, C2, (g1 - 2) / 2, f1 / 6])
    fam = from_B(B)
    assert fam.A == Poly([g1, f1]) and fam.U is None
    fam = from_B(Poly([1, 0, 1]) ** 2)
    assert fam.U == Poly([1, 0, 1])
    fam = from_B(Poly([1, 0, 0, 1]))
    assert fam.A == Poly([2, 6]) and fam.U is None
    assert from_B(Poly([1, 0, 1]) ** 2, try_sqrt=False).U is None


def test_from_A_examples():
    g1, f1, C1, C2 = Fr(7, 3), Fr(-1, 2), Fr(3, 5), Fr(2)
    fam = from_A(Poly([g1, f1]), 2 * C1, C2)
    assert fam.B == Poly([2 * C1, C2, (g1 - 2) / 2, f1 / 6])
    fam = from_A(Poly([2]), 1, 0)
    assert fam.B == Poly([1])
    assert from_A(Poly([2, 6]), 1, 0).B == Poly([1, 0, 0, 1])
    assert from_A(Poly([6, 0, 12]), 1, 0, try_sqrt=True).U == Poly([1, 0, 1])


def bracket(a1, b1, c1, d1, e1, f1, g1, C1, C2):
    return [1680 * C1, 840 * C2, 420 * g1 - 840, 140 * f1, 70 * e1, 42 * d1, 28 * c1, 20 * b1, 15 * a1]


@settings(max_examples=200)
@given(st.tuples(*[rationals] * 9))
def test_octic_bracket_identity(t):
    a1, b1, c1, d1, e1, f1, g1, C1, C2 = t
    A = Poly([g1, f1, e1, d1, c1, b1, a1])
    try:
        fam = from_A(A, 2 * C1, C2)
    except ValueError:
        assert all(v == 0 for v in bracket(*t))
        return
    assert (840 * fam.B) == Poly(bracket(*t))


@given(B=polys(8, nonzero_lead=True))
def test_from_A_inverts_from_B(B):
    fam = from_B(B)
    assert from_A(fam.A, fam.B[0], fam.B[1], try_sqrt=True) == fam


@given(U=polys(6, nonzero_lead=True))
def test_forcing_is_consistent_with_U_squared(U):
    fam = from_U(U)
    F = X + U * U.derive()
    assert fam.forcing() == F
    assert (U * U).derive() == 2 * (F - X)


def test_recognize_radical_examples():
    assert recognize_radical(RadicalProduct(Poly([6, 0, 12]), Poly([1, 0, 1]) ** 2)).U == Poly([1, 0, 1])
    fam = recognize_radical(RadicalProduct(Poly([2, 0, 0, 0, 30]), Poly.monomial(1, 6)))
    assert fam.U == Poly.monomial(1, 3)
    with pytest.raises(NotInFamily) as ei:
        recognize_radical(RadicalProduct(Poly([1]), X))
    assert ei.value.residual == Poly([-1])


def test_recognize_poly_examples():
    assert recognize_poly(parse_poly("6 + 18*x^2 + 12*x^4")).U == Poly([1, 0, 1])
    assert recognize_poly(Poly([0, 4])).U == X
    assert recognize_poly(Poly.monomial(2, 3) + Poly.monomial(30, 7)).U == Poly.monomial(1, 3)
    for bad in (Poly.monomial(1, 2), Poly.monomial(2, 3) + Poly.monomial(15, 7), Poly([0, 1])):
        with pytest.raises(NotInFamily):
            recognize_poly(bad)
    with pytest.raises((NotInFamily, ValueError)):
        recognize_poly(Poly())


def test_recognize_constant_and_linear():
    assert recognize_poly(Poly([Fr(-4, 3)])).U == Poly([Fr(-2, 3)])
    # 2t^3 + 2t = 60 has the rational root t = 3
    assert recognize_poly(Poly([0, 60])).U == Poly([0, 3])
    U = Poly([Fr(1, 7), Fr(-3, 5)])
    assert recognize_poly(forward_poly(U)).U == U


@settings(max_examples=150)
@given(U=polys(5, nonzero_lead=True))
def test_recognize_roundtrip(U):
    assert recognize_poly(forward_poly(U)).U == U


@settings(max_examples=100)
@given(U=polys(5, nonzero_lead=True, min_degree=2), idx=st.integers(0, 12), delta=rationals)
def test_recognize_rejects_low_order_perturbation(U, idx, delta):
    # coefficients below the top d+1 are not used to determine U
    P = forward_poly(U)
    j = idx % (P.degree - U.degree)
    if delta == 0:
        return
    coeffs = list(P.coeffs)
    coeffs[j] += delta
    with pytest.raises(NotInFamily):
        recognize_poly(Poly(coeffs))


def test_recognize_never_lies(rng):
    for _ in range(300):
        P = random_poly(rng, rng.choice([1, 2, 4, 7, 10, 13]))
        try:
            fam = recognize_poly(P)
        except NotInFamily:
            continue
        assert forward_poly(fam.U) == P


def test_ode_rhs_examples():
    assert ode_rhs(from_U(Poly([1, 0, 1])), 1) == 18
    assert ode_rhs(from_U(Poly([-1, 1])), 1) == 0
    assert ode_rhs(from_U(Poly.monomial(1, 3)), -1) == 16
    with pytest.raises(RadicandNegative):
        ode_rhs(from_B(Poly([-1, 0, 1])), 0)


def test_family_validation_and_record():
    with pytest.raises(ValueError):
        Family(B=Poly([1]), A=Poly([3]))
    with pytest.raises(ValueError):
        Family(B=Poly([4]), A=Poly([2]), U=Poly([3]))
    bad = corrupted_family(Poly([1]), Poly([3]))
    assert bad.A != 2 + bad.B.derive(2)
    fam = from_U(Poly([Fr(1, 2), 0, -3]))
    rec = fam.to_record()
    assert rec["convention"] == CONVENTION == "Q=P/2"
    assert rec["P"] == {"A": rec["A"], "B": rec["B"]}
    assert Family.from_record(rec) == fam
    assert fam.first_integral_constants == (Fr(1, 4), 0)
    assert fam.h() == X**2 + fam.B
