"""Quadrature-inversion solver for y''' + y' = Q(y) and its Runge-Kutta oracle.

On the first-integral manifold (y')**2 = B(y) the third-order equation
reduces to y' = s*sqrt(B(y)) with branch sign s = ``direction``. Then

    x(y) = x0 + s * integral_{y0}^{y} dt / sqrt(B(t))
    y'   = s*sqrt(B),   y'' = B'/2,   y''' = s*B''*sqrt(B)/2

so y''' + y' = s*Q(y). The s = -1 branch solves the equation with the
negative branch of the radical; the residual column is reported against
s*Q accordingly.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from . import quadrature
from .errors import (
    InversionBracketFailure,
    RadicandNegative,
    RadicandNonPositive,
    StepUnderflow,
    ToleranceNotMet,
)
from .family import Family
from .polynomial import Poly, horner

CSV_HEADER = ("x", "y", "y1", "y2", "y3", "residual")

# beyond this |y| a solution is treated as having blown up
Y_LIMIT = 1e15


@dataclass(frozen=True)
class SolveConfig:
    x0: float = 0.0
    y0: float = 0.0
    direction: int = 1
    quad_tol: float = 1e-12
    inv_tol: float = 1e-12
    max_steps: int = 2000

    def __post_init__(self):
        if self.direction not in (1, -1):
            raise ValueError("direction must be +1 or -1")
        if not (self.quad_tol > 0 and self.inv_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.max_steps < 1:
            raise ValueError("max_steps must be positive")

    def to_record(self) -> dict:
        return {
            "x0": self.x0,
            "y0": self.y0,
            "direction": self.direction,
            "quad_tol": self.quad_tol,
            "inv_tol": self.inv_tol,
            "max_steps": self.max_steps,
        }


@dataclass
class SolutionTable:
    rows: list[tuple[float, float, float, float, float, float]]
    config: SolveConfig
    family: Family
    # max |(y')^2 - B(y)| over every oracle step; None for quadrature tables
    drift: float | None = None

    def column(self, name: str) -> np.ndarray:
        return np.array([r[CSV_HEADER.index(name)] for r in self.rows])

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in self.rows:
            w.writerow([repr(float(v)) for v in r])
        return buf.getvalue()

    def to_record(self) -> dict:
        return {
            "columns": list(CSV_HEADER),
            "rows": [list(r) for r in self.rows],
            "config": self.config.to_record(),
        }


def rows_from_csv(text: str) -> list[tuple[float, ...]]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if tuple(header) != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {header}")
    return [tuple(float(v) for v in row) for row in reader]


@dataclass(frozen=True)
class ResidualReport:
    max_abs_residual: float
    max_oracle_deviation: float
    first_integral_drift: float
    rows_checked: int
    closed_form_deviation: float | None = field(default=None)

    def worst(self) -> float:
        vals = [self.max_abs_residual, self.max_oracle_deviation, self.first_integral_drift]
        if self.closed_form_deviation is not None:
            vals.append(self.closed_form_deviation)
        return max(vals)

    def to_record(self) -> dict:
        return {
            "max_abs_residual": self.max_abs_residual,
            "max_oracle_deviation": self.max_oracle_deviation,
            "first_integral_drift": self.first_integral_drift,
            "rows_checked": self.rows_checked,
            "closed_form_deviation": self.closed_form_deviation,
        }


def _real_roots(p: Poly) -> list[float]:
    """Real zeros of p (floating point), deduplicated, ascending."""
    if p.degree < 1:
        return []
    c = p.float_coeffs()
    top = max(abs(v) for v in c)
    roots = np.roots([v / top for v in reversed(c)])
    out = []
    for z in roots:
        r = float(z.real)
        if abs(z.imag) > 1e-6 * max(1.0, abs(r)):
            continue
        scale = sum(abs(v) * abs(r) ** i for i, v in enumerate(c))
        if abs(horner(c, r)) <= 1e-8 * scale:
            out.append(r)
    out.sort()
    dedup = []
    for r in out:
        if not dedup or abs(r - dedup[-1]) > 1e-12 * max(1.0, abs(r)):
            dedup.append(r)
    return dedup


def positive_interval(fam: Family, y0: float) -> tuple[float, float]:
    """The open interval around y0 on which B > 0, bounded by real zeros of B."""
    roots = _real_roots(fam.U if fam.U is not None else fam.B)
    lo = max((r for r in roots if r < y0), default=-math.inf)
    hi = min((r for r in roots if r > y0), default=math.inf)
    return lo, hi


class _Branch:
    """Precomputed floating data for one (family, config) pair."""

    def __init__(self, fam: Family, cfg: SolveConfig):
        self.fam = fam
        self.cfg = cfg
        self.b = fam.B.float_coeffs()
        self.b1 = fam.B.derive().float_coeffs()
        self.b2 = fam.B.derive(2).float_coeffs()
        self.a = fam.A.float_coeffs()
        self.s = cfg.direction
        b0 = horner(self.b, cfg.y0)
        if not b0 > 0:
            raise RadicandNonPositive(cfg.y0, f"B(y0) = {b0!r} is not positive")
        self.lo, self.hi = positive_interval(fam, cfg.y0)
        self._bnp = np.array(self.b[::-1])

    def B(self, t: float) -> float:
        return horner(self.b, t)

    def integrand(self, t: np.ndarray) -> np.ndarray:
        v = np.polyval(self._bnp, t)
        if np.any(v <= 0):
            i = int(np.argmin(v))
            raise RadicandNonPositive(float(t[i]))
        return 1.0 / np.sqrt(v)

    def segment(self, ya: float, yb: float) -> float:
        """s * integral_{ya}^{yb} dt / sqrt(B)."""
        val, _ = quadrature.integrate(self.integrand, ya, yb, tol=self.cfg.quad_tol, max_panels=self.cfg.max_steps)
        return self.s * val

    def check_interval(self, y: float):
        if not (self.lo < y < self.hi):
            bound = self.hi if y >= self.cfg.y0 else self.lo
            raise RadicandNonPositive(bound, f"B vanishes at t = {bound!r} between y0 and y = {y!r}")
        if not self.B(y) > 0:
            raise RadicandNonPositive(y)

    def x_of_y(self, y: float) -> float:
        self.check_interval(y)
        return self.cfg.x0 + self.segment(self.cfg.y0, y)

    def rhs(self, v: float) -> float:
        bv = horner(self.b, v)
        if bv < 0:
            raise RadicandNegative(v, bv)
        return self.s * horner(self.a, v) * math.sqrt(bv) / 2

    def derivatives(self, y: float) -> tuple[float, float, float]:
        bv = horner(self.b, y)
        if bv < 0:
            raise RadicandNegative(y, bv)
        r = math.sqrt(bv)
        return self.s * r, horner(self.b1, y) / 2, self.s * horner(self.b2, y) * r / 2

    def invert(self, x: float, ya: float, xa: float) -> tuple[float, float]:
        """y with |x(y) - x| <= inv_tol, starting from the known point x(ya) = xa."""
        cfg = self.cfg
        if x == xa:
            return ya, xa
        sgn = self.s * (1 if x > xa else -1)
        bound = self.hi if sgn > 0 else self.lo
        h = abs(x - xa) * math.sqrt(self.B(ya))
        if not h > 0:
            h = 1e-8 * max(1.0, abs(ya))
        yp, xp = ya, xa
        for _ in range(cfg.max_steps):
            yc = yp + sgn * h
            if math.isfinite(bound) and (yc - bound) * sgn >= 0:
                yc = yp + (bound - yp) / 2
                if abs(bound - yc) <= 4 * np.finfo(float).eps * max(1.0, abs(bound)):
                    raise InversionBracketFailure(x, xp, yp, f"radicand root at y = {bound!r}")
            if abs(yc) > Y_LIMIT:
                raise InversionBracketFailure(x, xp, yp, "solution blows up")
            try:
                xc = xp + self.segment(yp, yc)
            except (RadicandNonPositive, ToleranceNotMet):
                raise InversionBracketFailure(x, xp, yp, "radicand boundary reached") from None
            if (xc - x) * (xp - x) <= 0:
                break
            yp, xp = yc, xc
            h *= 2
        else:
            raise InversionBracketFailure(x, xp, yp, "bracketing exhausted max_steps")
        return self._refine(x, (yp, xp), (yc, xc))

    def _refine(self, x, p1, p2):
        (y1, x1), (y2, x2) = p1, p2
        if abs(x1 - x) <= self.cfg.inv_tol:
            return y1, x1
        if abs(x2 - x) <= self.cfg.inv_tol:
            return y2, x2
        prev_gap = math.inf
        for _ in range(self.cfg.max_steps):
            yb, xb = (y1, x1) if abs(x - x1) <= abs(x - x2) else (y2, x2)
            gap = abs(x - xb)
            ylo, yhi = min(y1, y2), max(y1, y2)
            if gap > 0.5 * prev_gap:
                yn = 0.5 * (y1 + y2)
            else:
                # Newton step on x(y) - x using x'(y) = s / sqrt(B(y))
                yn = yb + self.s * (x - xb) * math.sqrt(self.B(yb))
                if not (ylo < yn < yhi):
                    yn = 0.5 * (y1 + y2)
            prev_gap = gap
            if not (ylo < yn < yhi):
                return yb, xb
            xn = xb + self.segment(yb, yn)
            if abs(xn - x) <= self.cfg.inv_tol:
                return yn, xn
            if (xn - x) * (x1 - x) > 0:
                y1, x1 = yn, xn
            else:
                y2, x2 = yn, xn
        raise InversionBracketFailure(x, xb, yb, "refinement exhausted max_steps")


def x_of_y(fam: Family, cfg: SolveConfig, y: float) -> float:
    return _Branch(fam, cfg).x_of_y(float(y))


def y_of_x(fam: Family, cfg: SolveConfig, x: float) -> float:
    return _Branch(fam, cfg).invert(float(x), cfg.y0, cfg.x0)[0]


def derivatives_at(fam: Family, y: float, direction: int = 1) -> tuple[float, float, float]:
    """(y', y'', y''') on the manifold (y')**2 = B(y) for the given branch."""
    b = fam.B.float_coeffs()
    bv = horner(b, float(y))
    if bv < 0:
        raise RadicandNegative(float(y), bv)
    r = math.sqrt(bv)
    return (
        direction * r,
        horner(fam.B.derive().float_coeffs(), float(y)) / 2,
        direction * horner(fam.B.derive(2).float_coeffs(), float(y)) * r / 2,
    )


def _check_grid(xs) -> list[float]:
    xs = [float(v) for v in xs]
    if not xs:
        raise ValueError("empty grid")
    if len(xs) > 1:
        d = np.diff(xs)
        if not (np.all(d > 0) or np.all(d < 0)):
            raise ValueError("grid must be strictly monotone")
    return xs


def solve_grid(fam: Family, cfg: SolveConfig, xs) -> SolutionTable:
    xs = _check_grid(xs)
    br = _Branch(fam, cfg)
    rows = []
    known = (cfg.y0, cfg.x0)
    for x in xs:
        # chain from whichever known point is nearer in x
        ys, xk = known if abs(x - known[1]) < abs(x - cfg.x0) else (cfg.y0, cfg.x0)
        y, xr = br.invert(x, ys, xk)
        known = (y, xr)
        y1, y2, y3 = br.derivatives(y)
        rows.append((x, y, y1, y2, y3, y3 + y1 - br.rhs(y)))
    return SolutionTable(rows=rows, config=cfg, family=fam)


def _rk4_leg(br: _Branch, x: float, state: tuple[float, float, float], target: float, hmax: float, drift: list):
    n = max(1, math.ceil(abs(target - x) / hmax - 1e-9)) if hmax > 0 else 1
    h = (target - x) / n
    b = br.b

    def f(u1, u2, u3, xx):
        bv = horner(b, u1)
        if bv < 0:
            raise StepUnderflow(xx, u1)
        return u2, u3, br.s * horner(br.a, u1) * math.sqrt(bv) / 2 - u2

    u1, u2, u3 = state
    for i in range(n):
        xi = x + i * h
        k1 = f(u1, u2, u3, xi)
        k2 = f(u1 + 0.5 * h * k1[0], u2 + 0.5 * h * k1[1], u3 + 0.5 * h * k1[2], xi)
        k3 = f(u1 + 0.5 * h * k2[0], u2 + 0.5 * h * k2[1], u3 + 0.5 * h * k2[2], xi)
        k4 = f(u1 + h * k3[0], u2 + h * k3[1], u3 + h * k3[2], xi)
        u1 += h / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0])
        u2 += h / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])
        u3 += h / 6 * (k1[2] + 2 * k2[2] + 2 * k3[2] + k4[2])
        drift[0] = max(drift[0], abs(u2 * u2 - horner(b, u1)))
    return target, (u1, u2, u3)


def rk_oracle(fam: Family, cfg: SolveConfig, xs) -> SolutionTable:
    """Fixed-step classical RK4 on (y, y', y'')' = (y', y'', s*Q(y) - y').

    Starts on the manifold at (y0, s*sqrt(B(y0)), B'(y0)/2) and lands exactly
    on every requested abscissa; the step never exceeds
    span / max(4096, 64*len(xs)).
    """
    xs = _check_grid(xs)
    br = _Branch(fam, cfg)
    span = max(max(xs), cfg.x0) - min(min(xs), cfg.x0)
    hmax = span / max(4096, 64 * len(xs)) if span > 0 else 0.0
    start = (cfg.y0, *br.derivatives(cfg.y0)[:2])
    drift = [abs(start[1] ** 2 - br.B(cfg.y0))]
    states = {}
    for side in (sorted(v for v in xs if v >= cfg.x0), sorted((v for v in xs if v < cfg.x0), reverse=True)):
        x, st = cfg.x0, start
        for t in side:
            x, st = _rk4_leg(br, x, st, t, hmax, drift)
            states[t] = st
    rows = []
    for x in xs:
        u1, u2, u3 = states[x]
        y3 = br.rhs(u1) - u2
        rows.append((x, u1, u2, u3, y3, y3 + u2 - br.rhs(u1)))
    return SolutionTable(rows=rows, config=cfg, family=fam, drift=drift[0])


def verify(fam: Family, cfg: SolveConfig, xs) -> ResidualReport:
    quad = solve_grid(fam, cfg, xs)
    rk = rk_oracle(fam, cfg, xs)
    res = max(abs(r[5]) for r in quad.rows)
    dev = max(abs(a[1] - b[1]) for a, b in zip(quad.rows, rk.rows))
    return ResidualReport(
        max_abs_residual=float(res),
        max_oracle_deviation=float(dev),
        first_integral_drift=float(rk.drift),
        rows_checked=len(quad.rows),
    )
