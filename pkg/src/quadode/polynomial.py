"""Dense univariate polynomials with exact rational coefficients.

Coefficients are stored ascending (``coeffs[i]`` multiplies ``x**i``) as
:class:`fractions.Fraction`, trailing zeros stripped, so the zero polynomial
is the empty tuple and ``degree`` is -1 for it.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence

from .errors import NotAPerfectSquare

Rational = Fraction


def as_rational(value) -> Fraction:
    """Convert ints, Fractions, decimal strings or finite floats to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite coefficient {value!r}")
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a rational")


def _strip(coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


class Poly:
    __slots__ = ("coeffs", "_floats")

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs = _strip([as_rational(c) for c in coeffs])
        self._floats = None

    @classmethod
    def zero(cls) -> "Poly":
        return cls()

    @classmethod
    def const(cls, c) -> "Poly":
        return cls([c])

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def monomial(cls, c, n: int) -> "Poly":
        return cls([0] * n + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> Fraction:
        if i < 0:
            raise IndexError("negative coefficient index")
        return self.coeffs[i] if i < len(self.coeffs) else Fraction(0)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly([{', '.join(str(c) for c in self.coeffs)}])"

    def __str__(self) -> str:
        from .parser import print_canonical

        return print_canonical(self)

    @staticmethod
    def _lift(other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly([other])

    def __add__(self, other) -> "Poly":
        q = self._lift(other)
        n = max(len(self.coeffs), len(q.coeffs))
        return Poly([self[i] + q[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other) -> "Poly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Poly":
        return self._lift(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            c = as_rational(other)
            return Poly([c * a for a in self.coeffs])
        p, q = self.coeffs, other.coeffs
        if not p or not q:
            return Poly()
        out = [Fraction(0)] * (len(p) + len(q) - 1)
        for i, a in enumerate(p):
            if a == 0:
                continue
            for j, b in enumerate(q):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Poly":
        c = as_rational(other)
        if c == 0:
            raise ZeroDivisionError("polynomial divided by zero")
        return Poly([a / c for a in self.coeffs])

    def __pow__(self, n: int) -> "Poly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result, base = Poly([1]), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def derive(self, order: int = 1) -> "Poly":
        c = list(self.coeffs)
        for _ in range(order):
            c = [i * c[i] for i in range(1, len(c))]
        return Poly(c)

    def float_coeffs(self) -> tuple[float, ...]:
        if self._floats is None:
            self._floats = tuple(float(c) for c in self.coeffs)
        return self._floats

    def __call__(self, t):
        return poly_eval(self, t)


def poly_add(p: Poly, q: Poly) -> Poly:
    return p + q


def poly_mul(p: Poly, q: Poly) -> Poly:
    return p * q


def poly_derive(p: Poly) -> Poly:
    return p.derive()


def horner(coeffs: Sequence[float], t: float) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def poly_eval(p: Poly, t):
    """Evaluate by Horner's rule: exact for int/Fraction ``t``, floating otherwise.

    numpy arrays are evaluated elementwise in floating point.
    """
    if isinstance(t, (int, Fraction)) and not isinstance(t, bool):
        acc = Fraction(0)
        for c in reversed(p.coeffs):
            acc = acc * t + c
        return acc
    if isinstance(t, complex):
        acc = 0j
        for c in reversed(p.float_coeffs()):
            acc = acc * t + c
        return acc
    if hasattr(t, "shape"):
        acc = 0.0 * t
        for c in reversed(p.float_coeffs()):
            acc = acc * t + c
        return acc
    return horner(p.float_coeffs(), float(t))


def integer_root(n: int, k: int) -> int | None:
    """Exact k-th root of a non-negative integer, or None if n is not a k-th power."""
    if n < 0:
        raise ValueError("negative radicand")
    if n < 2:
        return n
    if k == 2:
        r = math.isqrt(n)
        return r if r * r == n else None
    # integer Newton iteration from an upper bound
    r = 1 << -(-n.bit_length() // k)
    while True:
        s = ((k - 1) * r + n // r ** (k - 1)) // k
        if s >= r:
            break
        r = s
    return r if r**k == n else None


def rational_root(q: Fraction, k: int) -> Fraction | None:
    """Exact real k-th root of a rational (odd k allows negatives), or None."""
    q = Fraction(q)
    if q < 0:
        if k % 2 == 0:
            return None
        r = rational_root(-q, k)
        return None if r is None else -r
    num = integer_root(q.numerator, k)
    den = integer_root(q.denominator, k)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def perfect_square_root(p: Poly) -> Poly:
    """Return q with q*q == p and positive leading coefficient.

    Raises NotAPerfectSquare when no such rational polynomial exists.
    """
    if p.is_zero():
        return Poly()
    if p.degree % 2:
        raise NotAPerfectSquare(f"odd degree {p.degree}")
    lead = rational_root(p.lead, 2)
    if lead is None:
        raise NotAPerfectSquare(f"leading coefficient {p.lead} is not a rational square")
    k = p.degree // 2
    q = [Fraction(0)] * (k + 1)
    q[k] = lead
    # match coefficients of x^(2k-i), top down
    for i in range(1, k + 1):
        acc = p[2 * k - i]
        for j in range(k - i + 1, k):
            acc -= q[j] * q[2 * k - i - j]
        q[k - i] = acc / (2 * lead)
    root = Poly(q)
    if root * root != p:
        raise NotAPerfectSquare("coefficient mismatch")
    return root
