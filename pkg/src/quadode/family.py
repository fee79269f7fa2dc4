"""Solvable families of y''' + y' = Q(y) and the maps between U, B, A and P.

A family is fixed by its radicand B (the first integral reads (y')**2 = B(y)).
From B follow A = 2 + B'' and Q = A*sqrt(B)/2, the right-hand side actually
solved. When B = U**2 for a rational polynomial U the right-hand side is the
polynomial U*A/2 wherever U >= 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import NotAPerfectSquare, NotInFamily, RadicandNegative
from .parser import RadicalProduct
from .polynomial import Poly, as_rational, perfect_square_root, poly_eval, rational_root

CONVENTION = "Q=P/2"


@dataclass(frozen=True)
class Family:
    B: Poly
    A: Poly
    U: Poly | None = field(default=None)

    def __post_init__(self):
        if self.B.is_zero():
            raise ValueError("radicand B must be nonzero")
        if self.A != 2 + self.B.derive(2):
            raise ValueError("A must equal 2 + B''")
        if self.U is not None and self.U * self.U != self.B:
            raise ValueError("U**2 must equal B")

    @property
    def P(self) -> RadicalProduct:
        return RadicalProduct(self.A, self.B)

    @property
    def first_integral_constants(self) -> tuple[Fraction, Fraction]:
        """(b0, b1): the free low coefficients of B, b0 = 2*C1 and b1 = C2."""
        return self.B[0], self.B[1]

    def h(self) -> Poly:
        return Poly.x() ** 2 + self.B

    def forcing(self) -> Poly:
        """F with y'' = F(y) - y, i.e. F = x + B'/2 (= x + U*U' for squares)."""
        return Poly.x() + self.B.derive() / 2

    def polynomial_rhs(self) -> Poly | None:
        """U*A/2: the polynomial right-hand side valid where U >= 0."""
        if self.U is None:
            return None
        return self.U * self.A / 2

    def to_record(self) -> dict:
        rec = {
            "B": [str(c) for c in self.B],
            "A": [str(c) for c in self.A],
            "P": {"A": [str(c) for c in self.A], "B": [str(c) for c in self.B]},
            "U": None if self.U is None else [str(c) for c in self.U],
            "convention": CONVENTION,
        }
        return rec

    @classmethod
    def from_record(cls, rec: dict) -> "Family":
        u = rec.get("U")
        return cls(
            B=Poly(Fraction(c) for c in rec["B"]),
            A=Poly(Fraction(c) for c in rec["A"]),
            U=None if u is None else Poly(Fraction(c) for c in u),
        )


class _Unchecked(Family):
    """Family whose A is not tied to B; only for mutation tests of the solver."""

    def __post_init__(self):
        pass


def corrupted_family(B: Poly, A: Poly) -> Family:
    """Build a family that deliberately violates A = 2 + B''."""
    return _Unchecked(B=B, A=A)


def from_U(U: Poly) -> Family:
    if U.is_zero():
        raise ValueError("U must be nonzero")
    B = U * U
    return Family(B=B, A=2 + B.derive(2), U=U)


def from_B(B: Poly, try_sqrt: bool = True) -> Family:
    if B.is_zero():
        raise ValueError("B must be nonzero")
    U = None
    if try_sqrt:
        try:
            U = perfect_square_root(B)
        except NotAPerfectSquare:
            U = None
    return Family(B=B, A=2 + B.derive(2), U=U)


def from_A(A: Poly, b0, b1, try_sqrt: bool = False) -> Family:
    """Integrate B'' = A - 2 twice, with B's constant and linear terms given."""
    b = [as_rational(b0), as_rational(b1)]
    for n in range(max(len(A), 1)):
        a = A[n] - 2 if n == 0 else A[n]
        b.append(a / ((n + 1) * (n + 2)))
    B = Poly(b)
    if B.is_zero():
        raise ValueError("A, b0, b1 give the zero radicand")
    return from_B(B, try_sqrt=try_sqrt)


def recognize_radical(rp: RadicalProduct) -> Family:
    residual = rp.A - 2 - rp.B.derive(2)
    if not residual.is_zero():
        raise NotInFamily("A differs from 2 + B''", residual=residual)
    return from_B(rp.B)


def forward_poly(U: Poly) -> Poly:
    """U * (2 + (U**2)'')."""
    return U * (2 + (U * U).derive(2))


def _solve_monotone_cubic(p: Fraction) -> Fraction | None:
    """Rational root of 2t^3 + 2t = p, if it exists (the real root is unique)."""
    p = Fraction(p)
    # a rational root r/s in lowest terms has s | 2*den(p); two such rationals
    # differ by more than `width`, so limit_denominator on a tight dyadic
    # bracket recovers it exactly
    bound = 2 * p.denominator
    width = Fraction(1, 8 * bound * bound)
    f = lambda t: 2 * t**3 + 2 * t - p
    lo, hi = Fraction(-1), Fraction(1)
    while f(lo) > 0:
        lo *= 2
    while f(hi) < 0:
        hi *= 2
    while hi - lo > width:
        mid = (lo + hi) / 2
        if f(mid) > 0:
            hi = mid
        else:
            lo = mid
    candidate = ((lo + hi) / 2).limit_denominator(bound)
    return candidate if f(candidate) == 0 else None


def recognize_poly(P: Poly) -> Family:
    """Find rational U with U*(2 + (U**2)'') = P.

    deg P = 3d - 2 for deg U = d >= 1 and deg P = 0 for constant U. The
    leading coefficient fixes u_d (a rational cube root, or the monotone cubic
    2t^3 + 2t = p_1 when d = 1); the rest follow one at a time from the
    descending coefficients, each entering linearly.
    """
    if P.is_zero():
        raise NotInFamily("P is the zero polynomial")
    n = P.degree
    if n == 0:
        U = Poly([P[0] / 2])
        return from_U(U)
    if (n + 2) % 3:
        raise NotInFamily(f"degree {n} is not of the form 3d - 2")
    d = (n + 2) // 3
    lead = P.lead
    if d == 1:
        u_d = _solve_monotone_cubic(lead)
        if u_d is None:
            raise NotInFamily("2t^3 + 2t = p1 has no rational root")
    else:
        u_d = rational_root(lead / (2 * d * (2 * d - 1)), 3)
        if u_d is None:
            raise NotInFamily("leading coefficient has no rational cube root")
    u = [Fraction(0)] * (d + 1)
    u[d] = u_d
    for k in range(1, d + 1):
        j = d - k
        m = n - k
        u[j] = Fraction(0)
        c0 = forward_poly(Poly(u))[m]
        u[j] = Fraction(1)
        c1 = forward_poly(Poly(u))[m]
        slope = c1 - c0
        if slope == 0:
            raise NotInFamily(f"coefficient matching degenerate at x^{m}")
        u[j] = (P[m] - c0) / slope
    U = Poly(u)
    residual = forward_poly(U) - P
    if not residual.is_zero():
        raise NotInFamily("coefficient matching leaves a residual", residual=residual)
    return from_U(U)


def ode_rhs(fam: Family, v):
    """Q(v) = A(v)*sqrt(B(v))/2 on the nonnegative root branch."""
    b = poly_eval(fam.B, float(v))
    if b < 0:
        raise RadicandNegative(float(v), b)
    return poly_eval(fam.A, float(v)) * math.sqrt(b) / 2
