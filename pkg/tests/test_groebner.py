import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import XY, XYZ, from_sympy, polynomials, to_sympy
from jetfol.algebra import GREVLEX, LEX, Polynomial
from jetfol.errors import ContextMismatchError, ResourceLimitError
from jetfol.groebner import (
    Ideal,
    buchberger,
    eliminate,
    ideal_contains_scheme,
    ideal_equal,
    ideal_intersection,
    ideal_member,
    is_unit_ideal,
    radical_member,
    saturate_ideal,
    step_budget,
)

x, y, z = (Polynomial.var(XYZ, n) for n in "xyz")


def _sympy_basis(ideal: Ideal, order: str):
    exprs = [to_sympy(g)[0] for g in ideal.generators]
    syms = sympy.symbols(ideal.ctx.names)
    gb = sympy.groebner(exprs, *syms, order=order)
    mono = LEX if order == "lex" else GREVLEX
    return {from_sympy(e, ideal.ctx).monic(mono) for e in gb.exprs}


def test_twisted_cubic_matches_sympy():
    ideal = Ideal(XYZ, [y - x**2, z - x**3])
    assert set(buchberger(ideal, LEX).basis) == _sympy_basis(ideal, "lex")
    assert set(buchberger(ideal, GREVLEX).basis) == _sympy_basis(ideal, "grevlex")


@settings(max_examples=40, deadline=None)
@given(st.lists(polynomials(XY, max_terms=3, max_exp=2), min_size=1, max_size=3))
def test_reduced_basis_matches_sympy(gens):
    ideal = Ideal(XY, gens)
    if ideal.is_zero():
        return
    assert set(buchberger(ideal).basis) == _sympy_basis(ideal, "grevlex")


@settings(max_examples=40, deadline=None)
@given(st.lists(polynomials(XY, max_terms=3, max_exp=2), min_size=1, max_size=3), polynomials(XY, max_terms=3))
def test_generators_and_combinations_are_members(gens, h):
    ideal = Ideal(XY, gens)
    for g in gens:
        assert ideal_member(g, ideal)
    if gens:
        assert ideal_member(h * gens[0], ideal)


def test_membership_examples():
    ideal = Ideal(XYZ, [x * y, y - x])
    assert ideal_member(x**2, ideal)
    assert not ideal_member(x, ideal)


def test_radical_membership():
    ideal = Ideal(XYZ, [x**2, y**3])
    assert radical_member(x, ideal)
    assert radical_member(x + y, ideal)
    assert not ideal_member(x, ideal)
    assert not radical_member(z, ideal)


def test_elimination():
    ideal = Ideal(XYZ, [y - x**2, z - x**3])
    out = eliminate(ideal, ["x"])
    assert out.ctx.names == ("y", "z")
    yz = [Polynomial.var(out.ctx, n) for n in ("y", "z")]
    assert ideal_member(yz[0] ** 3 - yz[1] ** 2, out)


def test_intersection_monomial_and_general():
    a, b = Ideal(XYZ, [x]), Ideal(XYZ, [y])
    fast = ideal_intersection(a, b)
    slow = ideal_intersection(a, b, method="elimination")
    assert ideal_equal(fast, slow)
    assert ideal_equal(fast, Ideal(XYZ, [x * y]))
    c = ideal_intersection(Ideal(XYZ, [x - 1]), Ideal(XYZ, [x + 1]))
    assert ideal_equal(c, Ideal(XYZ, [x**2 - 1]))


def test_saturation():
    ideal = Ideal(XYZ, [x**2 * y, x * z])
    sat = saturate_ideal(ideal, x)
    assert ideal_equal(sat, Ideal(XYZ, [y, z]))


def test_containment_modes():
    fat = Ideal(XYZ, [x**2])
    red = Ideal(XYZ, [x])
    assert ideal_contains_scheme(fat, red, "set")
    assert not ideal_contains_scheme(fat, red, "scheme")
    assert ideal_contains_scheme(red, fat, "scheme")
    assert ideal_equal(fat, red, "set")


def test_unit_ideal():
    assert is_unit_ideal(Ideal(XYZ, [x, x + 1]))
    assert not is_unit_ideal(Ideal(XYZ, [x, y]))


def test_step_budget():
    ideal = Ideal(XYZ, [x * y - z**2, y * z - x**2, x * z - y**2 + 1])
    with step_budget(1):
        with pytest.raises(ResourceLimitError):
            buchberger(ideal)


def test_context_mismatch():
    with pytest.raises(ContextMismatchError):
        ideal_member(Polynomial.var(XY, "x"), Ideal(XYZ, [x]))
