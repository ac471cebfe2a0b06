"""Shared helpers: sympy bridges and hypothesis strategies for small polynomials."""

from fractions import Fraction

import sympy
from hypothesis import strategies as st

from jetfol.algebra import Polynomial, VarContext
from jetfol.foliation import OneForm

XYZ = VarContext.of("x", "y", "z")
XY = VarContext.of("x", "y")


def to_sympy(p: Polynomial):
    syms = sympy.symbols(p.ctx.names)
    expr = sympy.Integer(0)
    for exps, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, e in zip(syms, exps):
            term *= s**e
        expr += term
    return sympy.expand(expr), syms


def from_sympy(expr, ctx: VarContext) -> Polynomial:
    syms = sympy.symbols(ctx.names)
    poly = sympy.Poly(sympy.expand(expr), *syms)
    terms = {tuple(m): Fraction(int(c.p), int(c.q)) for m, c in zip(poly.monoms(), poly.coeffs())}
    return Polynomial(ctx, terms)


coefficients = st.fractions(min_value=-4, max_value=4, max_denominator=3)


@st.composite
def polynomials(draw, ctx=XY, max_terms=4, max_exp=3):
    n = len(ctx)
    terms = draw(
        st.dictionaries(
            st.tuples(*[st.integers(0, max_exp)] * n),
            coefficients,
            max_size=max_terms,
        )
    )
    return Polynomial(ctx, terms)


@st.composite
def nonzero_polynomials(draw, ctx=XY, max_terms=4, max_exp=3):
    p = draw(polynomials(ctx, max_terms, max_exp))
    if p.is_zero():
        p = Polynomial.const(ctx, 1)
    return p


@st.composite
def forms(draw, ctx=XY, max_terms=3, max_exp=2):
    coeffs = [draw(polynomials(ctx, max_terms, max_exp)) for _ in range(len(ctx))]
    if all(c.is_zero() for c in coeffs):
        coeffs[0] = Polynomial.var(ctx, 1 % len(ctx))
    return OneForm(ctx, tuple(coeffs))
