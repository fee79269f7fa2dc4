import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from quadode.polynomial import Poly

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=12)


@st.composite
def polys(draw, max_degree=8, nonzero_lead=False, min_degree=0):
    deg = draw(st.integers(min_degree, max_degree))
    coeffs = draw(st.lists(rationals, min_size=deg + 1, max_size=deg + 1))
    if nonzero_lead and coeffs[-1] == 0:
        coeffs[-1] = Fraction(1)
    return Poly(coeffs)


def random_rational(rng: random.Random, bound: int = 5, max_den: int = 9) -> Fraction:
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(-bound * den, bound * den), den)


def random_poly(rng: random.Random, degree: int, nonzero_lead: bool = True) -> Poly:
    coeffs = [random_rational(rng) for _ in range(degree + 1)]
    while nonzero_lead and coeffs[-1] == 0:
        coeffs[-1] = random_rational(rng)
    return Poly(coeffs)


@pytest.fixture
def rng():
    return random.Random(12345)


def slope_error(entry, y: float, inverse=None) -> float:
    """Relative gap between a central difference of closed_yi at y and direction/sqrt(B(y))."""
    import math

    from quadode.polynomial import poly_eval

    f = inverse or entry.closed_yi
    lo, hi = entry.closed_yi_domain
    h = 1e-3 * min(1.0, y - lo, hi - y)  # stay well clear of roots of B
    slope = (8 * (f(y + h) - f(y - h)) - (f(y + 2 * h) - f(y - 2 * h))) / (12 * h)
    want = entry.direction / math.sqrt(poly_eval(entry.family.B, float(y)))
    return abs(slope - want) / abs(want)


@st.composite
def catalog_points(draw):
    """(entry name, params, y) with y comfortably inside closed_yi's domain."""
    import math

    from quadode.catalog import get_entry

    small = st.fractions(min_value=-3, max_value=3, max_denominator=8)
    nonzero = small.filter(lambda v: abs(v) >= Fraction(1, 4))
    name = draw(st.sampled_from(["quartic", "pure-cubic", "shifted-cubic", "elliptic-cubic"]))
    if name == "quartic":
        e, f = draw(nonzero), draw(small)
        delta = draw(st.fractions(min_value=Fraction(1, 8), max_value=5, max_denominator=8))
        params = {"e": e, "f": f, "g": (f * f + delta) / (4 * e)}
        y = draw(st.floats(-5, 5))
    elif name == "pure-cubic":
        y0 = draw(nonzero)
        params = {"d": draw(nonzero), "y0": y0}
        y = math.copysign(draw(st.floats(0.2, 3)), float(y0))
    elif name == "shifted-cubic":
        d, g = draw(nonzero), draw(nonzero)
        a = math.copysign(abs(float(g / d)) ** (1 / 3), float(g / d))
        side = draw(st.sampled_from([-1, 1]))
        y0 = -a + side * draw(st.floats(0.2, 2))
        params = {"d": d, "g": g, "y0": Fraction(y0).limit_denominator(1000)}
        y = -a + side * draw(st.floats(0.15, 3))
    else:
        params = {
            "f1": draw(small) * 2,
            "g1": draw(small) * 2,
            "C1": draw(st.fractions(min_value=Fraction(1, 4), max_value=2, max_denominator=8)),
            "C2": draw(small),
        }
        lo, hi = get_entry(name, params).closed_yi_domain
        lo, hi = max(lo, -3.0), min(hi, 3.0)
        t = draw(st.floats(-0.85, 0.85))
        y = t * (hi if t > 0 else -lo)
    return name, params, y


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
