"""Elliptic integrals of the first kind, parameter convention m (not modulus k).

    F(phi | m) = integral_0^phi dt / sqrt(1 - m sin^2 t)

evaluated through Carlson's R_F, with K(m) from the arithmetic-geometric mean
as an independent route, and the cubic-radicand integrals that reduce to R_F.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import quadrature
from .errors import CrossCheckFailure, DomainError, RadicandNonPositive
from .polynomial import Poly, horner

_SPREAD = 1e-8
_RF_MAX_ITER = 100


@dataclass(frozen=True)
class EllipticArgs:
    phi: float
    m: float


def _rf_series(x, y, z, sqrt):
    for _ in range(_RF_MAX_ITER):
        mu = (x + y + z) / 3
        dx, dy, dz = (mu - x) / mu, (mu - y) / mu, (mu - z) / mu
        if max(abs(dx), abs(dy), abs(dz)) < _SPREAD:
            break
        sx, sy, sz = sqrt(x), sqrt(y), sqrt(z)
        lam = sx * (sy + sz) + sy * sz
        x, y, z = (x + lam) / 4, (y + lam) / 4, (z + lam) / 4
    else:
        raise DomainError("R_F duplication did not converge")
    e2 = dx * dy - dz * dz
    e3 = dx * dy * dz
    return (1 + (e2 / 24 - 0.1 - 3 * e3 / 44) * e2 + e3 / 14) / sqrt(mu)


def carlson_rf(x: float, y: float, z: float) -> float:
    """Carlson's symmetric integral R_F(x, y, z) by the duplication theorem."""
    args = (float(x), float(y), float(z))
    if any(not math.isfinite(a) or a < 0 for a in args):
        raise DomainError(f"R_F needs finite non-negative arguments, got {args}")
    if sum(a == 0 for a in args) > 1:
        raise DomainError("R_F diverges with more than one zero argument")
    return _rf_series(*args, math.sqrt)


def _carlson_rf_complex(x: complex, y: complex, z: complex) -> complex:
    # valid for arguments in the plane cut along the negative real axis,
    # e.g. a conjugate pair plus a positive real
    return _rf_series(complex(x), complex(y), complex(z), cmath.sqrt)


def agm(a: float, b: float) -> tuple[float, int]:
    """Arithmetic-geometric mean and the number of iterations used."""
    if a < 0 or b < 0:
        raise DomainError("AGM needs non-negative arguments")
    n = 0
    while abs(a - b) > 2.5e-16 * max(a, b):
        a, b = 0.5 * (a + b), math.sqrt(a * b)
        n += 1
        if n > 64:
            break
    return 0.5 * (a + b), n


def complete_k_agm(m: float, return_iterations: bool = False):
    """K(m) = pi / (2 AGM(1, sqrt(1 - m))) for 0 <= m < 1."""
    m = float(m)
    if not (0 <= m < 1):
        raise DomainError(f"complete K needs 0 <= m < 1, got {m}")
    g, n = agm(1.0, math.sqrt(1.0 - m))
    k = math.pi / (2 * g)
    return (k, n) if return_iterations else k


def complete_k(m: float) -> float:
    """K(m) through R_F(0, 1 - m, 1)."""
    m = float(m)
    if not m < 1:
        raise DomainError(f"complete K needs m < 1, got {m}")
    return carlson_rf(0.0, 1.0 - m, 1.0)


def incomplete_f(args: EllipticArgs | float, m: float | None = None) -> float:
    """F(phi | m); accepts ``incomplete_f(EllipticArgs(phi, m))`` or ``incomplete_f(phi, m)``."""
    if not isinstance(args, EllipticArgs):
        args = EllipticArgs(float(args), float(m))
    phi, m = args.phi, args.m
    if not (math.isfinite(phi) and math.isfinite(m)):
        raise DomainError("non-finite argument")
    if abs(phi) <= math.pi / 2:
        s = math.sin(phi)
        if m * s * s >= 1:
            raise DomainError(f"m sin^2(phi) = {m * s * s} must be below 1")
        if phi == 0:
            return 0.0
        c = math.cos(phi)
        return s * carlson_rf(c * c, 1 - m * s * s, 1.0)
    if not m < 1:
        raise DomainError("quasi-periodic extension needs m < 1")
    # F(phi + j*pi | m) = F(phi | m) + 2 j K(m)
    j = round(phi / math.pi)
    rest = phi - j * math.pi
    s = math.sin(rest)
    c = math.cos(rest)
    base = 0.0 if rest == 0 else s * carlson_rf(c * c, 1 - m * s * s, 1.0)
    return base + 2 * j * complete_k(m)


def _cubic_roots(c3, c2, c1, c0) -> tuple[list[float], list[complex]]:
    """Real roots (polished) and one representative of a complex pair."""
    roots = np.roots([c3, c2, c1, c0])
    real, cplx = [], []
    for z in roots:
        if abs(z.imag) <= 1e-10 * max(1.0, abs(z)):
            r = float(z.real)
            for _ in range(3):
                f = ((c3 * r + c2) * r + c1) * r + c0
                df = (3 * c3 * r + 2 * c2) * r + c1
                if df == 0:
                    break
                r -= f / df
            real.append(r)
        elif z.imag > 0:
            cplx.append(complex(z))
    return sorted(real), cplx


def carlson_cubic_integral(c3: float, c2: float, c1: float, c0: float, lo: float, hi: float) -> float | None:
    """integral_lo^hi dt / sqrt(cubic) via R_F, or None if not applicable.

    Writes the cubic as K * prod(a_i + b_i t) with each factor positive on
    [lo, hi] and uses integral = 2 R_F(U12^2, U13^2, U14^2) / sqrt(K), the
    fourth linear factor being the constant 1.
    """
    if c3 == 0 or hi <= lo:
        return None
    real, cplx = _cubic_roots(c3, c2, c1, c0)
    if not real or min(real) > lo:
        return None
    if len(real) + 2 * len(cplx) != 3:
        return None
    if any(lo <= r <= hi for r in real):
        return None
    factors = []  # (a, b) pairs: a + b t
    sign = 1.0
    for r in real:
        if r < lo:
            factors.append((-r, 1.0))
        else:
            factors.append((r, -1.0))
            sign = -sign
    for z in cplx:
        factors.append((-z, 1.0))
        factors.append((-z.conjugate(), 1.0))
    k = c3 * sign
    if not k > 0:
        return None
    X = [cmath.sqrt(a + b * hi) for a, b in factors]
    Y = [cmath.sqrt(a + b * lo) for a, b in factors]
    d = hi - lo
    u12 = (X[0] * X[1] * Y[2] + Y[0] * Y[1] * X[2]) / d
    u13 = (X[0] * X[2] * Y[1] + Y[0] * Y[2] * X[1]) / d
    u14 = (X[0] * Y[1] * Y[2] + Y[0] * X[1] * X[2]) / d
    val = 2 * _carlson_rf_complex(u12 * u12, u13 * u13, u14 * u14) / math.sqrt(k)
    return float(val.real)


def cubic_x_of_y(c3: float, c2: float, c1: float, c0: float, y: float, tol: float = 1e-12) -> float:
    """integral_0^y dt / sqrt(c3 t^3 + c2 t^2 + c1 t + c0).

    Computed by adaptive quadrature and, when the cubic has a real root at or
    below the interval, cross-checked against the Carlson reduction.
    """
    c3, c2, c1, c0, y = (float(v) for v in (c3, c2, c1, c0, y))
    if y == 0:
        return 0.0
    lo, hi = min(0.0, y), max(0.0, y)
    coeffs = (c0, c1, c2, c3)
    cubic = Poly([c0, c1, c2, c3])
    if cubic.is_zero():
        raise RadicandNonPositive(0.0, "cubic is identically zero")
    real = [r for r in _cubic_roots(c3, c2, c1, c0)[0] if lo <= r <= hi] if c3 != 0 else _low_roots(coeffs, lo, hi)
    if real:
        raise RadicandNonPositive(real[0], f"cubic vanishes at t = {real[0]!r} in [{lo}, {hi}]")
    for t in (lo, hi):
        if not horner(coeffs, t) > 0:
            raise RadicandNonPositive(t)
    desc = np.array([c3, c2, c1, c0])

    def integrand(t):
        v = np.polyval(desc, t)
        if np.any(v <= 0):
            raise RadicandNonPositive(float(t[int(np.argmin(v))]))
        return 1.0 / np.sqrt(v)

    numeric, _ = quadrature.integrate(integrand, lo, hi, tol=tol)
    carlson = carlson_cubic_integral(c3, c2, c1, c0, lo, hi)
    if carlson is not None and abs(numeric - carlson) > 1e-9 * max(1.0, abs(numeric)):
        raise CrossCheckFailure(numeric, carlson)
    return numeric if y > 0 else -numeric


def _low_roots(coeffs, lo, hi) -> list[float]:
    c0, c1, c2, _ = coeffs
    if c2 != 0:
        disc = c1 * c1 - 4 * c2 * c0
        if disc < 0:
            return []
        s = math.sqrt(disc)
        cands = [(-c1 - s) / (2 * c2), (-c1 + s) / (2 * c2)]
    elif c1 != 0:
        cands = [-c0 / c1]
    else:
        cands = []
    return [r for r in cands if lo <= r <= hi]
