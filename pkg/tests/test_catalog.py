import math

import numpy as np
import pytest
from hypothesis import given, settings

from quadode.catalog import example_entry, get_entry, list_entries, verify_entry
from quadode.errors import ParamDomainError, UnknownEntry
from quadode.family import ode_rhs
from quadode.polynomial import Poly
from quadode.solver import derivatives_at, solve_grid, y_of_x

from conftest import catalog_points, slope_error

NAMES = ["quartic", "pure-cubic", "shifted-cubic", "elliptic-cubic", "octic-radicand"]


def test_quartic_example_is_tan():
    entry = get_entry("quartic", e=1, f=0, g=1)
    assert (entry.x0, entry.y0, entry.direction) == (0.0, 0.0, 1)
    for x in (-1.2, -0.3, 0.0, 0.9, 1.5):
        assert abs(entry.closed_y(x) - math.tan(x)) < 1e-14
    for y in (-10.0, 0.0, 2.0):
        assert abs(entry.closed_yi(y) - math.atan(y)) < 1e-14
    lo, hi = entry.closed_y_interval
    assert abs(lo + math.pi / 2) < 1e-14 and abs(hi - math.pi / 2) < 1e-14


def test_quartic_reduces_to_printed_form_at_default_anchor():
    e, f, g = 2, -1, 3
    entry = get_entry("quartic", e=e, f=f, g=g)
    D = 4 * e * g - f * f
    for x in np.linspace(-0.5, 0.5, 7):
        printed = (math.sqrt(D) * math.tan(x * math.sqrt(D) / 2) - f) / (2 * e)
        assert abs(entry.closed_y(x) - printed) < 1e-13


def test_quartic_closed_y_satisfies_the_ode():
    entry = get_entry("quartic", e=1, f=1, g=2, y0=0.3)
    h = 2e-3
    for x in np.linspace(-0.4, 0.4, 5):
        # fourth-order central stencils
        ym3, ym2, ym1, y, y1, y2, y3 = (entry.closed_y(x + k * h) for k in range(-3, 4))
        d1 = (ym2 - 8 * ym1 + 8 * y1 - y2) / (12 * h)
        d3 = (-y3 + 8 * y2 - 13 * y1 + 13 * ym1 - 8 * ym2 + ym3) / (8 * h**3)
        assert abs(d3 + d1 - ode_rhs(entry.family, y)) < 1e-6 * max(1.0, abs(d3))


def test_pure_cubic_example():
    entry = get_entry("pure-cubic", d=1)
    assert (entry.x0, entry.y0) == (0.0, 1.0)
    assert abs(entry.closed_y(0.375) - 2.0) < 1e-15
    assert abs(entry.closed_yi(2.0) - 0.375) < 1e-15


def test_quartic_degenerate_discriminant():
    with pytest.raises(ParamDomainError):
        get_entry("quartic", e=1, f=2, g=1)
    with pytest.raises(ParamDomainError):
        get_entry("quartic", e=0, f=0, g=1)


def test_parameter_errors():
    with pytest.raises(UnknownEntry):
        get_entry("nonesuch")
    with pytest.raises(ParamDomainError):
        get_entry("quartic", e=1, f=0)
    with pytest.raises(ParamDomainError):
        get_entry("quartic", e=1, f=0, g=1, h=2)
    with pytest.raises(ParamDomainError):
        get_entry("pure-cubic", d=1, y0=0)


def test_list_entries_stable_and_complete():
    first = list_entries()
    assert [e["name"] for e in first] == NAMES
    assert first == list_entries()
    for item in first:
        entry = get_entry(item["name"], item["example"])
        assert entry.name == item["name"]
        assert entry.to_record()["name"] == item["name"]


@pytest.mark.parametrize("name", NAMES)
def test_example_entries_verify(name):
    entry = example_entry(name)
    lo, hi = entry.default_interval
    rep = verify_entry(name, {k: v for k, v in entry.params.items()}, np.linspace(lo, hi, 41))
    assert rep.worst() < 1e-6
    if entry.closed_y is not None:
        assert rep.closed_form_deviation < 1e-8


def test_verify_entry_examples():
    rep = verify_entry("quartic", {"e": 1, "f": 0, "g": 1}, np.linspace(-1.2, 1.2, 97))
    assert max(rep.max_abs_residual, rep.max_oracle_deviation, rep.first_integral_drift) < 1e-6
    assert rep.closed_form_deviation < 1e-8
    rep = verify_entry("pure-cubic", {"d": 1}, np.linspace(0, 0.45, 46))
    assert rep.worst() < 1e-6
    rep = verify_entry("quartic", {"e": 1, "f": 0, "g": 1}, [0.0])
    assert rep.worst() < 1e-15
    with pytest.raises(ParamDomainError):
        verify_entry("quartic", {"e": 1, "f": 0, "g": 1}, [0.0, 1.6])


def test_negative_leading_quartic_uses_lower_branch():
    entry = get_entry("quartic", e=-2, f=1, g=-3)
    assert entry.direction == -1
    lo, hi = entry.default_interval
    rep = verify_entry("quartic", {"e": -2, "f": 1, "g": -3}, np.linspace(lo, hi, 31))
    assert rep.worst() < 1e-6


def test_closed_yi_inverts_closed_y():
    for name in ("quartic", "pure-cubic"):
        entry = example_entry(name)
        lo, hi = entry.default_interval
        for x in np.linspace(lo, hi, 9):
            assert abs(entry.closed_yi(entry.closed_y(x)) - x) < 1e-9


def test_closed_yi_agrees_with_numeric_inversion():
    for name in ("shifted-cubic", "elliptic-cubic"):
        entry = example_entry(name)
        cfg = entry.config()
        lo, hi = entry.default_interval
        for x in np.linspace(lo, hi, 7):
            assert abs(entry.closed_yi(y_of_x(entry.family, cfg, x)) - x) < 1e-9


@settings(max_examples=120, deadline=None)
@given(point=catalog_points())
def test_closed_yi_slope_is_inverse_speed(point):
    name, params, y = point
    assert slope_error(get_entry(name, params), y) < 1e-6


def test_slope_guard_catches_a_factor_of_two():
    entry = example_entry("quartic")
    halved = lambda y: entry.closed_yi(y) / 2
    assert slope_error(entry, 0.7, inverse=halved) > 0.4


def test_notes_flag_the_printed_formulas():
    assert any("45 d^{4/3} g^{2/3} x^2" in n for n in example_entry("shifted-cubic").notes)
    assert any("15 d^3 x^7" in n for n in example_entry("pure-cubic").notes)
    assert any("A*sqrt(B)" in n for n in example_entry("elliptic-cubic").notes)
    assert any("twice" in n for n in example_entry("quartic").notes)


def test_shifted_cubic_domain_excludes_root():
    with pytest.raises(ParamDomainError):
        get_entry("shifted-cubic", d=1, g=-8, y0=2)
    entry = get_entry("shifted-cubic", d=1, g=-8, y0=3)
    assert entry.closed_yi_domain == (2.0, math.inf)
    assert entry.direction == 1
