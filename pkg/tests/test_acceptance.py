"""Acceptance suite: one check per criterion, each printing a PASS or FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` or directly with
``python3 tests/test_acceptance.py``.
"""

import functools
import operator
import sys
from fractions import Fraction

import pytest

from jetfol.algebra import Polynomial, VarContext, exact_divide
from jetfol.blowup import dicritical_probe
from jetfol.classify import NormalFormSpec, jet_comparison_probe, normal_form_generate
from jetfol.foliation import OneForm, order_criterion_check
from jetfol.groebner import Ideal, ideal_equal
from jetfol.jets import jet_ideal_foliation, jet_ideal_scheme, nc_jet_oracle
from jetfol.parsing import parse_form, parse_ideal, parse_polynomial
from jetfol.resolve import point_separatrices, resolve_2d
from jetfol.tangency import full_tangency_up_to, jet_witness_check, strong_tangency_up_to

RESULTS = {}


def criterion(number: int, title: str):
    """Record and print the outcome of a criterion check, then re-raise failures for pytest."""

    def wrap(fn):
        @functools.wraps(fn)
        def run():
            try:
                detail = fn()
            except Exception as exc:
                RESULTS[number] = False
                print(f"criterion {number}: FAIL - {title} ({type(exc).__name__}: {exc})", file=sys.__stdout__)
                raise
            RESULTS[number] = True
            suffix = f" ({detail})" if detail else ""
            print(f"criterion {number}: PASS - {title}{suffix}", file=sys.__stdout__)

        return run

    return wrap


def _normal_crossings(n: int) -> Ideal:
    ctx = VarContext.of(*(("x", "y") if n == 2 else tuple(f"x{i}" for i in range(1, n + 1))))
    return Ideal(ctx, [functools.reduce(operator.mul, (Polynomial.var(ctx, i) for i in range(n)))])


def _same_up_to_unit(form: OneForm, text: str) -> bool:
    other = parse_form(text, form.ctx)
    a = [b for b in form.coefficients if b]
    if not a:
        return other.is_zero()
    k = next(i for i, b in enumerate(form.coefficients) if b)
    if not other[k]:
        return False
    c = form[k].leading_term()[1] / other[k].leading_term()[1]
    return all(b == o * c for b, o in zip(form.coefficients, other.coefficients))


def _poly_up_to_unit(p: Polynomial, text: str) -> bool:
    q = parse_polynomial(text, p.ctx)
    return p.monic() == q.monic()


# ---------------------------------------------------------------------------


@criterion(1, "jets of the normal-crossings divisor equal the oracle intersection (reduced-GB equality)")
def test_criterion_1_nc_jet_tower():
    mismatches = []
    for n, orders in ((2, range(2, 7)), (3, range(3, 5))):
        ideal = _normal_crossings(n)
        for m in orders:
            scheme = jet_ideal_scheme(ideal, m, (0,) * n).ideal
            oracle = nc_jet_oracle(n, m).intersection
            if not ideal_equal(scheme, oracle, "scheme"):
                same_set = ideal_equal(scheme, oracle, "set")
                mismatches.append(f"n={n} m={m} (equal as sets: {same_set})")
    assert not mismatches, "reduced bases differ at " + ", ".join(mismatches)


@criterion(2, "first integral: jet fibres of ydx+xdy equal those of V(xy); ydx-x^2dy has the same jets")
def test_criterion_2_first_integral():
    c = parse_ideal("[x*y]")
    w1 = parse_form("y*d(x) + x*d(y)")
    for m in range(1, 7):
        fol = jet_ideal_foliation(w1, m, (0, 0)).ideal
        sch = jet_ideal_scheme(c, m, (0, 0)).ideal
        assert ideal_equal(fol, sch, "scheme"), f"ydx+xdy differs at m={m}"
    w2 = parse_form("y*d(x) - x^2*d(y)")
    scheme_level = []
    for m in range(1, 6):
        a = jet_ideal_foliation(w2, m, (0, 0)).ideal
        b = jet_ideal_foliation(w1, m, (0, 0)).ideal
        assert ideal_equal(a, b, "set"), f"ydx-x^2dy has different jets at m={m}"
        scheme_level.append(ideal_equal(a, b, "scheme"))
    return f"second form equal as ideals for m <= {scheme_level.index(False)} and as sets for m <= 5"


@criterion(3, "V(xy) and V(y-x) tangent to ydx-xdy up to 5, their union fails at exactly 3 with the known witness")
def test_criterion_3_tangency_counterexample():
    w = parse_form("y*d(x) - x*d(y)")
    for text in ("[x*y]", "[y - x]"):
        v = strong_tangency_up_to(parse_ideal(text, w.ctx), w, 5, "set", search_witness=False)
        assert v.result, f"{text} not tangent"
    union = parse_ideal("[x*y*(y - x)]", w.ctx)
    v = strong_tangency_up_to(union, w, 5, "set")
    assert not v.result and v.first_failure.order == 3
    assert strong_tangency_up_to(union, w, 2, "set", search_witness=False).result
    # x = t + t^2 + t^3, y = t + 2t^2 + t^3
    assert jet_witness_check(union, w, [(0, 1, 1, 1), (0, 1, 2, 1)], 3) == (True, False)
    return "set-level containment"


@criterion(4, "fat point V(x^2,xy,y^2) tangent to ydx+xdy up to 5; the cube of the maximal ideal fails at 2")
def test_criterion_4_fat_points():
    w = parse_form("y*d(x) + x*d(y)")
    fat = parse_ideal("[x^2, x*y, y^2]", w.ctx)
    assert strong_tangency_up_to(fat, w, 5, "set", search_witness=False).result
    cube = parse_ideal("[x^3, x^2*y, x*y^2, y^3]", w.ctx)
    v = strong_tangency_up_to(cube, w, 5, "set")
    assert not v.result and v.first_failure.order == 2
    return "set-level containment"


@criterion(5, "simple characterisation probe: A(1,2) equal, A(1,-1) strictly larger at 2, C(r=1) diverges at 2")
def test_criterion_5_probe():
    a = normal_form_generate(NormalFormSpec("A", 2, 0, (), (1, 2)))
    r = jet_comparison_probe(a, 2, 5)
    assert r.verdict == "EqualsNCOracle" and r.max_order == 5
    r = jet_comparison_probe(parse_form("y*d(x) - x*d(y)"), 2, 2)
    assert r.verdict == "SchemeStrictlyLarger" and r.first_divergence == 2
    c = normal_form_generate(NormalFormSpec("C", 2, 2, (1,), (Fraction(-1),)))
    r = jet_comparison_probe(c, 2, 2)
    assert r.first_divergence == 2
    assert r.nc_components - r.matched_components == 1
    return "compared as zero sets"


@criterion(6, "resolution of y^2dx-x^2dy reproduces the transforms, classifications and multiplicities")
def test_criterion_6_resolution():
    report = resolve_2d(parse_form("y^2*d(x) - x^2*d(y)"), 3)
    root = report.root
    (origin,) = root.points
    first = next(ch for ch in origin.children if ch.chart.describe() == "y = x*v")
    assert _same_up_to_unit(first.form, "(v^2 - v)*d(x) - x*d(v)")
    assert _poly_up_to_unit(first.cumulative_factor, "x^2")
    assert first.cumulative_multiplicity == 2
    tags = {rec.point: rec for rec in first.points}
    assert tags[(0, 0)].classification.tag == "Reduced"
    assert tags[(0, 1)].dicritical
    second = {ch.chart.describe(): ch for ch in tags[(0, 1)].children}
    a = second["v - 1 = x*t"]
    assert _same_up_to_unit(a.form, "t^2*d(x) - d(t)")
    assert _poly_up_to_unit(a.cumulative_factor, "x^4")
    b = second["x = (v - 1)*s"]
    assert _same_up_to_unit(b.form, "v*d(s) + s*d(v)")
    assert _poly_up_to_unit(b.cumulative_factor, "(v - 1)^4*s^2")
    assert (a.cumulative_multiplicity, b.cumulative_multiplicity) == (4, 4)
    assert report.verdict == "DicriticalDetected"


@criterion(7, "dicriticality of ydx-xdy at depth 1; V(xy,y^2) fully tangent to ydx-(x+y)dy through 4")
def test_criterion_7_dicritical_and_total_separatrix():
    w = parse_form("y*d(x) - x*d(y)")
    r = dicritical_probe(w, 1)
    assert r.dicritical and r.depth_searched == 1
    step = r.witness[-1].transform
    assert step.chart.describe() == "y = x*v"
    assert _same_up_to_unit(step.raw_form, "-x^2*d(v)")
    assert not step.exceptional_invariant
    c = parse_form("y*d(x) - (x + y)*d(y)")
    assert full_tangency_up_to(parse_ideal("[x*y, y^2]", c.ctx), c, 4, "set").result
    return "full tangency compared as zero sets"


@criterion(8, "randomised property suites, 200 cases each")
def test_criterion_8_properties():
    import test_properties as props

    names = [n for n in dir(props) if n.startswith("test_")]
    for name in names:
        getattr(props, name)()
    return f"{len(names)} suites"


@criterion(9, "order criterion at the origin and at every reduced point of the resolution tree")
def test_criterion_9_order_criterion():
    for form, g in (("y*d(x) + x*d(y)", "x*y"), ("y*d(x) - (x + y)*d(y)", "y")):
        w = parse_form(form)
        r = order_criterion_check(w, parse_polynomial(g, w.ctx), (0, 0))
        assert r.holds, f"fails for {form}, g = {g}"
    checked = 0
    report = resolve_2d(parse_form("y^2*d(x) - x^2*d(y)"), 3)
    for node in report.root.walk():
        for rec in node.points:
            if rec.classification.tag != "Reduced":
                continue
            seps = point_separatrices(node.form, rec.point)
            assert seps, f"no separatrix found at {rec.point}"
            g = functools.reduce(operator.mul, seps)
            assert order_criterion_check(node.form, g, rec.point).holds
            checked += 1
    assert checked >= 3
    return f"{checked} reduced points"


if __name__ == "__main__":
    sys.path.insert(0, __file__.rsplit("/", 1)[0])
    checks = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    for check in checks:
        try:
            check()
        except Exception:
            pass
    sys.exit(0 if all(RESULTS.values()) else 1)
