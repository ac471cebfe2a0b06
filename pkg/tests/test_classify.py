from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jetfol.classify import (
    EigenData,
    NormalFormSpec,
    classify_reduced_2d,
    dimensional_type_estimate,
    jet_comparison_probe,
    normal_form_generate,
    presimple_check,
    resonance_brute_force,
    resonance_check,
)
from jetfol.errors import UserInputError
from jetfol.foliation import format_form, integrability_check
from jetfol.parsing import parse_form


@pytest.mark.parametrize(
    "form, tag",
    [
        ("y*d(x) + x*d(y)", "Reduced"),
        ("y*d(x) + 2*x*d(y)", "Reduced"),
        ("y*d(x) - (x + y)*d(y)", "TypeC_Shape"),
        ("y*d(x) - (2*x + 3*y^2)*d(y)", "TypeC_Shape"),
        ("y*d(x) - x*d(y)", "PreSimpleA_Resonant"),
        ("y*d(x) - 2*x*d(y)", "PreSimpleA_Resonant"),
        ("y*d(y) - x^2*d(x)", "Nilpotent_NonPreSimple"),
        ("x^2*d(x) + y^2*d(y)", "ZeroLinear_NonPreSimple"),
        ("d(x)", "NotSingular"),
        ("x*d(x) + x*y*d(y)", "Smooth"),
    ],
)
def test_classification(form, tag):
    w = parse_form(form, variables=["x", "y"])
    assert classify_reduced_2d(w, (0, 0)).tag == tag


def test_not_singular_point():
    assert classify_reduced_2d(parse_form("y*d(x) + x*d(y)"), (1, 0)).tag in ("NotSingular", "Smooth")


def test_complex_eigenvalues_are_reduced():
    c = classify_reduced_2d(parse_form("x*d(x) + y*d(y)"), (0, 0))
    assert c.tag == "Reduced"
    assert c.eigen.eigenvalues is None


def test_eigen_data():
    e = EigenData.of_matrix(((Fraction(1), Fraction(0)), (Fraction(0), Fraction(-1))))
    assert sorted(e.eigenvalues) == [-1, 1]


@pytest.mark.parametrize(
    "lams, witness",
    [((1, 2), None), ((1, -1), (1, 1)), ((0, 5), (1, 0)), ((2, 3, -5), (1, 1, 1)), ((Fraction(1, 2), Fraction(-1, 3)), (2, 3))],
)
def test_resonance_examples(lams, witness):
    assert resonance_check(lams) == witness


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=2, max_size=3))
def test_resonance_agrees_with_search(lams):
    fast = resonance_check(lams)
    slow = resonance_brute_force(lams, 6)
    assert (fast is None) == (slow is None) or (fast is not None and max(fast) > 6)


def test_presimple():
    w = parse_form("y*d(x) + x*d(y)")
    assert presimple_check(w, [0, 1]).presimple
    assert not presimple_check(parse_form("y^2*d(x) - x^2*d(y)"), [0]).presimple


def test_normal_forms():
    c = normal_form_generate(NormalFormSpec("C", 2, 2, (1,), (Fraction(-1),)))
    assert format_form(c) == "y*d(x) - (x + y)*d(y)"
    a = normal_form_generate(NormalFormSpec("A", 2, 0, (), (1, 2)))
    assert format_form(a) == "y*d(x) + 2*x*d(y)"
    b = normal_form_generate(NormalFormSpec("B", 2, 1, (1,), (Fraction(1),), (Fraction(1),), 3))
    assert integrability_check(b).integrable
    with pytest.raises(UserInputError):
        NormalFormSpec("B", 2, 2, (2, 4), (1,), (1,)).validate()


def test_jet_comparison_probe():
    a = normal_form_generate(NormalFormSpec("A", 2, 0, (), (1, 2)))
    assert jet_comparison_probe(a, 2, 3).verdict == "EqualsNCOracle"
    r = jet_comparison_probe(parse_form("y*d(x) - x*d(y)"), 2, 3)
    assert r.verdict == "SchemeStrictlyLarger" and r.first_divergence == 2


def test_dimensional_type():
    w = parse_form("y*d(x) + 2*x*d(y)")
    from jetfol.foliation import cylinder

    assert dimensional_type_estimate(cylinder(w, ["z"])) == 2
    assert dimensional_type_estimate(parse_form("d(x)", variables=["x", "y"])) == 1
