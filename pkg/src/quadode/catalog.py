"""Worked solvable families with validated closed forms.

Every entry carries an explicit anchor (x0, y0) and branch sign; closed forms
stored here were checked against the solver and, for inverse functions, by
differentiation, not copied from printed formulas. Where a printed formula
disagrees, the entry's notes say so.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

from . import elliptic
from .errors import ParamDomainError, UnknownEntry
from .family import Family, from_A, from_U
from .polynomial import Poly, as_rational
from .solver import ResidualReport, SolveConfig, positive_interval, solve_grid, verify

Interval = tuple[float, float]


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    params: dict[str, Fraction]
    family: Family
    x0: float
    y0: float
    direction: int
    closed_y: Callable[[float], float] | None = None
    # open x-interval on which closed_y is defined
    closed_y_interval: Interval | None = None
    closed_yi: Callable[[float], float] | None = None
    # open y-interval on which closed_yi is defined
    closed_yi_domain: Interval | None = None
    default_interval: Interval = (-0.25, 0.25)
    notes: tuple[str, ...] = field(default_factory=tuple)

    def config(self, **overrides) -> SolveConfig:
        kw = dict(x0=self.x0, y0=self.y0, direction=self.direction)
        kw.update(overrides)
        return SolveConfig(**kw)

    def to_record(self) -> dict:
        return {
            "name": self.name,
            "params": {k: str(v) for k, v in self.params.items()},
            "family": self.family.to_record(),
            "anchor": {"x0": self.x0, "y0": self.y0},
            "direction": self.direction,
            "closed_y": self.closed_y is not None,
            "closed_y_interval": _interval_record(self.closed_y_interval),
            "closed_yi": self.closed_yi is not None,
            "closed_yi_domain": _interval_record(self.closed_yi_domain),
            "default_interval": list(self.default_interval),
            "notes": list(self.notes),
        }


def _interval_record(iv):
    if iv is None:
        return None
    return [None if math.isinf(v) else v for v in iv]


def _bind(name: str, signature: tuple[str, ...], defaults: Mapping[str, object], params: Mapping) -> dict[str, Fraction]:
    unknown = set(params) - set(signature)
    if unknown:
        raise ParamDomainError(f"{name}: unknown parameters {sorted(unknown)}")
    out = {}
    for key in signature:
        if key in params:
            val = params[key]
        elif key in defaults:
            val = defaults[key]
        else:
            raise ParamDomainError(f"{name}: missing parameter {key!r}")
        if callable(val):
            val = val(out)
        try:
            out[key] = as_rational(val)
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise ParamDomainError(f"{name}: bad value for {key!r}: {exc}") from None
    return out


def _quartic(p: dict[str, Fraction]) -> CatalogEntry:
    e, f, g = p["e"], p["f"], p["g"]
    if e == 0:
        raise ParamDomainError("quartic: e must be nonzero")
    disc = 4 * e * g - f * f
    if disc <= 0:
        raise ParamDomainError(f"quartic: 4eg - f^2 = {disc} must be positive for the trigonometric branch")
    U = Poly([g, f, e])
    fam = from_U(U)
    x0, y0 = float(p["x0"]), float(p["y0"])
    ef, ff = float(e), float(f)
    root = math.sqrt(float(disc))
    theta0 = math.atan((2 * ef * y0 + ff) / root)

    def closed_y(x: float) -> float:
        return (root * math.tan((x - x0) * root / 2 + theta0) - ff) / (2 * ef)

    def closed_yi(y: float) -> float:
        return x0 + 2 / root * (math.atan((2 * ef * y + ff) / root) - theta0)

    lo = x0 + 2 * (-math.pi / 2 - theta0) / root
    hi = x0 + 2 * (math.pi / 2 - theta0) / root
    default = (x0 + 0.8 * (lo - x0), x0 + 0.8 * (hi - x0))
    notes = (
        "U = g + f x + e x^2, right-hand side U*(2 + (U^2)'')/2 = g + f^2 g + 2 e g^2 + (f + f^3 + 8 e f g) y"
        " + (e + 7 e f^2 + 8 e^2 g) y^2 + 12 e^2 f y^3 + 6 e^3 y^4; the f = 0 case is g + 2 e g^2"
        " + (e + 8 e^2 g) y^2 + 6 e^3 y^4.",
        "The printed P equals A*sqrt(B)/2, so with that P the integral of h''/P is twice the inverse function;"
        " the closed form stored here, 2 atan((2 e y + f)/sqrt(4 e g - f^2))/sqrt(4 e g - f^2), is the one that"
        " satisfies the equation.",
        "Default anchor y0 = -f/(2e) at x0 = 0 reproduces y = (sqrt(D) tan(x sqrt(D)/2) - f)/(2e), D = 4eg - f^2.",
        "e < 0 gives U < 0 everywhere; the entry then uses the y' = -sqrt(B) branch (direction -1).",
        "4eg < f^2 (hyperbolic regime) is not covered by this entry.",
    )
    return CatalogEntry(
        name="quartic", params=p, family=fam, x0=x0, y0=y0, direction=1 if e > 0 else -1,
        closed_y=closed_y, closed_y_interval=(lo, hi), closed_yi=closed_yi,
        closed_yi_domain=(-math.inf, math.inf), default_interval=default, notes=notes,
    )


def _pure_cubic(p: dict[str, Fraction]) -> CatalogEntry:
    d = p["d"]
    if d == 0:
        raise ParamDomainError("pure-cubic: d must be nonzero")
    if p["y0"] == 0:
        raise ParamDomainError("pure-cubic: y0 = 0 is an equilibrium (B(y0) = 0)")
    fam = from_U(Poly([0, 0, 0, d]))
    x0, y0, df = float(p["x0"]), float(p["y0"]), float(d)
    rate = 2 * df * y0 * y0

    def closed_y(x: float) -> float:
        return y0 / math.sqrt(1 - rate * (x - x0))

    def closed_yi(y: float) -> float:
        return x0 + (1 / (y0 * y0) - 1 / (y * y)) / (2 * df)

    edge = x0 + 1 / rate
    interval = (-math.inf, edge) if rate > 0 else (edge, math.inf)
    default = (x0, x0 + 0.9 / rate) if rate > 0 else (x0 + 0.9 / rate, x0)
    notes = (
        "B = d^2 x^6, A = 2 + 30 d^2 x^4, so P = A*sqrt(B) = 2 d x^3 + 30 d^3 x^7 for x >= 0; erratum: the"
        " printed P has 15 d^3 x^7, while the printed equation y''' + y' = d y^3 + 15 d^3 y^7 matches P/2"
        " with the derived coefficient.",
        "Real branch y = y0 (1 - 2 d y0^2 (x - x0))^(-1/2); the printed y = i/sqrt(2 d x) is the complex"
        " branch with the integration constant set to zero and is not evaluated here.",
    )
    return CatalogEntry(
        name="pure-cubic", params=p, family=fam, x0=x0, y0=y0,
        direction=1 if d * p["y0"] > 0 else -1,
        closed_y=closed_y, closed_y_interval=interval, closed_yi=closed_yi,
        closed_yi_domain=(0.0, math.inf) if y0 > 0 else (-math.inf, 0.0),
        default_interval=default, notes=notes,
    )


def _shifted_cubic(p: dict[str, Fraction]) -> CatalogEntry:
    d, g = p["d"], p["g"]
    if d == 0 or g == 0:
        raise ParamDomainError("shifted-cubic: d and g must be nonzero")
    U = Poly([g, 0, 0, d])
    fam = from_U(U)
    x0, y0 = float(p["x0"]), float(p["y0"])
    df, gf = float(d), float(g)
    a = math.copysign(abs(gf / df) ** (1 / 3), gf / df)  # g + d t^3 = d (t^3 + a^3)
    if y0 == -a:
        raise ParamDomainError("shifted-cubic: y0 is the real root of U")

    def G(t: float) -> float:
        # antiderivative of 1/(t^3 + a^3) by partial fractions
        return (
            math.log(abs(t + a))
            - 0.5 * math.log(t * t - a * t + a * a)
            + math.sqrt(3) * math.atan((2 * t - a) / (a * math.sqrt(3)))
        ) / (3 * a * a)

    g0 = G(y0)

    def closed_yi(y: float) -> float:
        return x0 + (G(y) - g0) / df

    u0 = gf + df * y0**3
    domain = (-a, math.inf) if y0 > -a else (-math.inf, -a)
    notes = (
        "U = g + d x^3, right-hand side U*(2 + (U^2)'')/2 = g + 6 d g^2 y + d y^3 + 21 d^2 g y^4 + 15 d^3 y^7.",
        "Inverse function by partial fractions about the real cube root a = (g/d)^(1/3):"
        " x - x0 = [G(y) - G(y0)]/d, G(t) = (ln|t + a| - ln(t^2 - a t + a^2)/2"
        " + sqrt(3) atan((2t - a)/(a sqrt(3))))/(3 a^2); validated by d/dy = 1/U(y).",
        "Erratum: the printed antiderivative contains the term 45 d^{4/3} g^{2/3} x^2, which cannot arise"
        " from integrating a multiple of 1/(g + d t^3); its derivative does not reproduce 1/U. The printed"
        " form is not used.",
        "No closed form for y(x); it is obtained by numeric inversion.",
    )
    return CatalogEntry(
        name="shifted-cubic", params=p, family=fam, x0=x0, y0=y0, direction=1 if u0 > 0 else -1,
        closed_yi=closed_yi, closed_yi_domain=domain, notes=notes,
        default_interval=(x0 - 0.25, x0 + 0.25),
    )


def _elliptic_cubic(p: dict[str, Fraction]) -> CatalogEntry:
    f1, g1, c1, c2 = p["f1"], p["g1"], p["C1"], p["C2"]
    if c1 <= 0:
        raise ParamDomainError("elliptic-cubic: C1 must be positive so that B(0) = 2 C1 > 0")
    fam = from_A(Poly([g1, f1]), 2 * c1, c2)
    x0 = -float(p["C"])
    cf = [float(v) for v in (f1 / 6, (g1 - 2) / 2, c2, 2 * c1)]

    def closed_yi(y: float) -> float:
        return x0 + elliptic.cubic_x_of_y(*cf, y)

    notes = (
        "B = 2 C1 + C2 x + ((g1 - 2)/2) x^2 + (f1/6) x^3, i.e. h = x^2 + (1680 C1 + 840 C2 x"
        " + (420 g1 - 840) x^2 + 140 f1 x^3)/840.",
        "The printed P for this family equals A*sqrt(B) (no factor 1/2); it is normalized to Q = A*sqrt(B)/2.",
        "x + C = integral_0^y dt/sqrt(B(t)), evaluated by quadrature and cross-checked through Carlson's R_F.",
        "No closed form for y(x); it is obtained by numeric inversion.",
    )
    return CatalogEntry(
        name="elliptic-cubic", params=p, family=fam, x0=x0, y0=0.0, direction=1,
        closed_yi=closed_yi, closed_yi_domain=positive_interval(fam, 0.0), notes=notes,
        default_interval=(x0 - 0.25, x0 + 0.25),
    )


_OCTIC_A = ("a1", "b1", "c1", "d1", "e1", "f1", "g1")


def _octic(p: dict[str, Fraction]) -> CatalogEntry:
    c1, c2 = p["C1"], p["C2"]
    if c1 <= 0:
        raise ParamDomainError("octic-radicand: C1 must be positive so that B(0) = 2 C1 > 0")
    A = Poly([p[k] for k in reversed(_OCTIC_A)])
    fam = from_A(A, 2 * c1, c2)
    x0 = -float(p["C"])
    notes = (
        "A = a1 x^6 + b1 x^5 + c1 x^4 + d1 x^3 + e1 x^2 + f1 x + g1; 840 B = 1680 C1 + 840 C2 x"
        " + (420 g1 - 840) x^2 + 140 f1 x^3 + 70 e1 x^4 + 42 d1 x^5 + 28 c1 x^6 + 20 b1 x^7 + 15 a1 x^8.",
        "The printed P for this family equals A*sqrt(B); it is normalized to Q = A*sqrt(B)/2.",
        "Hyperelliptic in general: solved numerically only.",
    )
    return CatalogEntry(
        name="octic-radicand", params=p, family=fam, x0=x0, y0=0.0, direction=1, notes=notes,
        default_interval=(x0 - 0.25, x0 + 0.25),
    )


_quartic_y0 = lambda bound: -bound["f"] / (2 * bound["e"]) if bound["e"] != 0 else Fraction(0)

# name -> (signature, defaults, documented example params, builder)
_REGISTRY = {
    "quartic": (
        ("e", "f", "g", "x0", "y0"),
        {"x0": 0, "y0": _quartic_y0},
        {"e": 1, "f": 0, "g": 1},
        _quartic,
    ),
    "pure-cubic": (
        ("d", "x0", "y0"),
        {"x0": 0, "y0": 1},
        {"d": 1},
        _pure_cubic,
    ),
    "shifted-cubic": (
        ("d", "g", "x0", "y0"),
        {"x0": 0, "y0": 0},
        {"d": 1, "g": 1},
        _shifted_cubic,
    ),
    "elliptic-cubic": (
        ("f1", "g1", "C1", "C2", "C"),
        {"C": 0},
        {"f1": 6, "g1": 2, "C1": Fraction(1, 2), "C2": 0},
        _elliptic_cubic,
    ),
    "octic-radicand": (
        _OCTIC_A + ("C1", "C2", "C"),
        {"C": 0},
        {"a1": 1, "b1": 0, "c1": 0, "d1": 0, "e1": 0, "f1": 0, "g1": 2, "C1": Fraction(1, 2), "C2": 0},
        _octic,
    ),
}


def list_entries() -> list[dict]:
    """Entry names, parameter signatures and documented example parameters, in fixed order."""
    out = []
    for name, (sig, defaults, example, _) in _REGISTRY.items():
        out.append({
            "name": name,
            "parameters": list(sig),
            "optional": [k for k in sig if k in defaults],
            "example": {k: str(as_rational(v)) for k, v in example.items()},
        })
    return out


def get_entry(name: str, params: Mapping | None = None, **kw) -> CatalogEntry:
    try:
        sig, defaults, _, build = _REGISTRY[name]
    except KeyError:
        raise UnknownEntry(f"unknown catalog entry {name!r}; known: {', '.join(_REGISTRY)}") from None
    merged = dict(params or {})
    merged.update(kw)
    return build(_bind(name, sig, defaults, merged))


def example_entry(name: str) -> CatalogEntry:
    if name not in _REGISTRY:
        raise UnknownEntry(f"unknown catalog entry {name!r}")
    return get_entry(name, _REGISTRY[name][2])


def verify_entry(name: str, params: Mapping | None, grid) -> ResidualReport:
    """solver.verify on the entry's family, plus closed_y vs. numeric inversion."""
    entry = get_entry(name, params)
    xs = [float(x) for x in grid]
    if entry.closed_y_interval is not None:
        lo, hi = entry.closed_y_interval
        bad = [x for x in xs if not lo < x < hi]
        if bad:
            raise ParamDomainError(f"{name}: grid point {bad[0]} outside the validity interval ({lo}, {hi})")
    cfg = entry.config()
    report = verify(entry.family, cfg, xs)
    if entry.closed_y is None:
        return report
    table = solve_grid(entry.family, cfg, xs)
    dev = max(abs(entry.closed_y(r[0]) - r[1]) for r in table.rows)
    return ResidualReport(
        max_abs_residual=report.max_abs_residual,
        max_oracle_deviation=report.max_oracle_deviation,
        first_integral_drift=report.first_integral_drift,
        rows_checked=report.rows_checked,
        closed_form_deviation=float(dev),
    )
