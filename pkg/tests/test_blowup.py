from fractions import Fraction

import pytest

from conftest import XY
from jetfol.algebra import Polynomial, VarContext, divides_poly
from jetfol.blowup import (
    blow_down,
    blowup_point_charts,
    dicritical_probe,
    poly_valuation,
    strict_transform_scheme,
    transform_form,
)
from jetfol.errors import UserInputError
from jetfol.foliation import format_form
from jetfol.groebner import Ideal, ideal_equal
from jetfol.parsing import parse_form

x, y = Polynomial.var(XY, "x"), Polynomial.var(XY, "y")


def test_chart_names_and_descriptions():
    c1, c2 = blowup_point_charts(XY)
    assert c1.source.names == ("x", "v") and c1.describe() == "y = x*v"
    assert c2.source.names == ("b", "y") and c2.describe() == "x = y*b"
    d1, d2 = blowup_point_charts(c1.source, (0, 1), level=1)
    assert d1.describe() == "v - 1 = x*t"
    assert d2.describe() == "x = (v - 1)*s"


def test_new_point_rule():
    c1, c2 = blowup_point_charts(XY)
    assert c1.is_new_point((0, 5))
    assert not c2.is_new_point((1, 0))
    assert c2.is_new_point((0, 0))
    assert not c1.is_new_point((1, 0))


def test_transform_of_cusp_form():
    w = parse_form("y^2*d(x) - x^2*d(y)")
    t = transform_form(w, blowup_point_charts(w.ctx)[0])
    assert str(t.factor) == "x^2"
    assert t.exceptional_multiplicity == 2
    assert format_form(t.saturated_form) == "(v^2 - v)*d(x) - x*d(v)"
    assert t.exceptional_invariant


def test_radial_form_is_dicritical_in_one_step():
    w = parse_form("y*d(x) - x*d(y)")
    t = transform_form(w, blowup_point_charts(w.ctx)[0])
    assert format_form(t.raw_form) == "-x^2*d(v)"
    assert not t.exceptional_invariant


def test_blow_down_recovers_a_multiple():
    w = parse_form("y^2*d(x) - x^2*d(y)")
    for ch in blowup_point_charts(w.ctx):
        t = transform_form(w, ch)
        back = blow_down(t.raw_form, ch)
        # back = e^k * w for some power k of the exceptional equation
        ratio = None
        for b, a in zip(back.coefficients, w.coefficients):
            if a:
                assert divides_poly(a, b)
        assert back[0] * w[1] == back[1] * w[0]


def test_strict_transform_of_the_node():
    c1, _ = blowup_point_charts(XY)
    st = strict_transform_scheme(Ideal(XY, [x * y]), c1)
    v = Polynomial.var(c1.source, "v")
    assert ideal_equal(st, Ideal(c1.source, [v]))


def test_poly_valuation():
    assert poly_valuation(x**3 * (y + 1), x) == 3


def test_dicritical_probe():
    r = dicritical_probe(parse_form("y*d(x) - x*d(y)"), 1)
    assert r.dicritical and r.depth_searched == 1
    assert r.witness[-1].transform.chart.describe() == "y = x*v"
    r = dicritical_probe(parse_form("y*d(x) + x*d(y)"), 3)
    assert not r.dicritical
    assert r.message == "no dicritical component found up to depth 3"


def test_blowup_needs_two_variables():
    with pytest.raises(UserInputError):
        blowup_point_charts(VarContext.of("x"))
