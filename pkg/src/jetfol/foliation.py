"""Codimension-one foliations given by polynomial 1-forms."""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .algebra import (
    GREVLEX,
    Polynomial,
    VarContext,
    as_point,
    compose,
    divides_poly,
    exact_divide,
    gcd_many,
    order_at_point,
    translate,
)
from .errors import DimensionMismatchError, UnsupportedError, UserInputError
from .groebner import Ideal, ideal_member


class UnsaturatedFormWarning(UserWarning):
    pass


@dataclass(frozen=True)
class OneForm:
    """``sum_i b_i dx_i`` with ``b_i`` in ``ctx``; ``dx_i`` follows the context order."""

    ctx: VarContext
    coefficients: tuple[Polynomial, ...]

    def __post_init__(self):
        coeffs = tuple(self.coefficients)
        if len(coeffs) != len(self.ctx):
            raise DimensionMismatchError(f"{len(coeffs)} coefficients for {len(self.ctx)} variables")
        for b in coeffs:
            if b.ctx.names != self.ctx.names:
                raise UserInputError("form coefficient lives in another context")
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def of(cls, *coeffs: Polynomial) -> "OneForm":
        return cls(coeffs[0].ctx, coeffs)

    @property
    def n(self) -> int:
        return len(self.ctx)

    def __iter__(self):
        return iter(self.coefficients)

    def __getitem__(self, k):
        return self.coefficients[k]

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def __mul__(self, f):
        if isinstance(f, Polynomial) or isinstance(f, (int, Fraction)):
            return OneForm(self.ctx, tuple(b * f for b in self.coefficients))
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self):
        return OneForm(self.ctx, tuple(-b for b in self.coefficients))

    def __add__(self, other: "OneForm") -> "OneForm":
        return OneForm(self.ctx, tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __sub__(self, other: "OneForm") -> "OneForm":
        return self + (-other)

    def contract(self, field: Sequence[Polynomial]) -> Polynomial:
        """``omega(X)`` for the vector field with components ``field``."""
        total = Polynomial.zero(self.ctx)
        for b, x in zip(self.coefficients, field):
            total = total + b * x
        return total

    def translate(self, point: Sequence) -> "OneForm":
        return OneForm(self.ctx, tuple(translate(b, point, range(self.n)) for b in self.coefficients))

    def to_context(self, ctx: VarContext) -> "OneForm":
        return OneForm(ctx, tuple(b.to_context(ctx) for b in self.coefficients))

    def renamed(self, names: Sequence[str]) -> "OneForm":
        ctx = VarContext.of(*names)
        return OneForm(ctx, tuple(Polynomial(ctx, b.terms) for b in self.coefficients))

    def __str__(self):
        return format_form(self)


def format_form(form: OneForm) -> str:
    from .printing import format_polynomial

    parts = []
    for name, b in zip(form.ctx.names, form.coefficients):
        if not b:
            continue
        d = f"d({name})"
        if len(b) == 1:
            (exps, c), = b.terms.items()
            neg = c < 0
            body = format_polynomial(-b if neg else b)
            text = d if body == "1" else f"{body}*{d}"
        else:
            neg = b.leading_term(GREVLEX)[1] < 0
            text = f"({format_polynomial(-b if neg else b)})*{d}"
        if not parts:
            parts.append(f"-{text}" if neg else text)
        else:
            parts.append(f" - {text}" if neg else f" + {text}")
    return "".join(parts) or "0"


def _check_nonzero(form: OneForm):
    if form.is_zero():
        raise UserInputError("the zero form defines no foliation")


# ---------------------------------------------------------------------------
# integrability, saturation, singular locus


@dataclass(frozen=True)
class IntegrabilityResult:
    integrable: bool
    witness: tuple[int, int, int, Polynomial] | None = None


def wedge_d_coefficient(form: OneForm, i: int, j: int, k: int) -> Polynomial:
    """Coefficient of ``dx_i^dx_j^dx_k`` in ``omega ^ d omega`` (i < j < k)."""
    b = form.coefficients
    return (
        b[i] * (b[k].diff(j) - b[j].diff(k))
        + b[j] * (b[i].diff(k) - b[k].diff(i))
        + b[k] * (b[j].diff(i) - b[i].diff(j))
    )


def integrability_check(form: OneForm) -> IntegrabilityResult:
    for i, j, k in itertools.combinations(range(form.n), 3):
        c = wedge_d_coefficient(form, i, j, k)
        if c:
            return IntegrabilityResult(False, (i, j, k, c))
    return IntegrabilityResult(True)


def saturate_form(form: OneForm) -> tuple[Polynomial, OneForm]:
    """Split ``form`` as ``factor * saturated`` with ``factor`` the monic coefficient gcd."""
    _check_nonzero(form)
    factor = gcd_many([b for b in form.coefficients if b])
    if factor == 1:
        return factor, form
    return factor, OneForm(form.ctx, tuple(exact_divide(b, factor) for b in form.coefficients))


def is_saturated(form: OneForm) -> bool:
    return saturate_form(form)[0] == 1


@dataclass(frozen=True)
class FoliationRecord:
    form: OneForm
    saturated: bool | None = None
    removed_factor: Polynomial | None = None

    @classmethod
    def from_form(cls, form: OneForm) -> "FoliationRecord":
        factor, sat = saturate_form(form)
        return cls(sat, True, factor)


def singular_ideal(form: OneForm, check: bool = True) -> Ideal:
    """``(b_1, ..., b_n)``; warns when the form is not saturated."""
    _check_nonzero(form)
    if check and not is_saturated(form):
        warnings.warn(
            "form is not saturated; its singular locus contains a divisor",
            UnsaturatedFormWarning,
            stacklevel=2,
        )
    return Ideal(form.ctx, form.coefficients)


def is_singular_point(form: OneForm, point: Sequence) -> bool:
    pt = as_point(point)
    return all(b(*pt) == 0 for b in form.coefficients)


# ---------------------------------------------------------------------------
# maps and slices


def pullback_form(form: OneForm, phi: Sequence[Polynomial]) -> OneForm:
    """``phi^* omega`` where ``phi[i]`` is the image of the i-th target variable."""
    phi = list(phi)
    if len(phi) != form.n:
        raise DimensionMismatchError(f"map has {len(phi)} components, form has {form.n} variables")
    src = phi[0].ctx
    for p in phi:
        if p.ctx.names != src.names:
            raise UserInputError("map components live in different contexts")
    pulled = [compose(b, phi) for b in form.coefficients]
    out = []
    for k in range(len(src)):
        acc = Polynomial.zero(src)
        for b, p in zip(pulled, phi):
            if b:
                acc = acc + b * p.diff(k)
        out.append(acc)
    return OneForm(src, tuple(out))


def identity_map(ctx: VarContext) -> list[Polynomial]:
    return [Polynomial.var(ctx, k) for k in range(len(ctx))]


def cylinder(form: OneForm, extra: Sequence[str]) -> OneForm:
    """Pull back along the projection forgetting the ``extra`` coordinates."""
    big = VarContext.of(*(form.ctx.names + tuple(extra)))
    coeffs = [b.to_context(big) for b in form.coefficients] + [Polynomial.zero(big)] * len(extra)
    return OneForm(big, tuple(coeffs))


def specialize(form: OneForm, assignment: Mapping[int | str, object]) -> OneForm:
    """Freeze ``x_i = y_i`` for the assigned indices and drop their ``dx_i``.

    The result lives on the remaining coordinates.
    """
    fixed = {}
    for k, v in assignment.items():
        try:
            idx = form.ctx.resolve(k)
        except Exception as exc:
            raise UserInputError(f"index {k!r} out of range") from exc
        fixed[idx] = Fraction(v)
    if not fixed:
        return form
    keep = [k for k in range(form.n) if k not in fixed]
    sub = VarContext.of(*(form.ctx.names[k] for k in keep))
    coeffs = tuple(form.coefficients[k].evaluate(fixed).to_context(sub) for k in keep)
    return OneForm(sub, coeffs)


def invariant_hypersurface_check(form: OneForm, g: Polynomial) -> bool:
    """``V(g)`` is a solution iff ``g`` divides every coefficient of ``omega ^ dg``."""
    if g.is_constant():
        raise UserInputError("hypersurface equation must be nonconstant")
    grads = [g.diff(k) for k in range(form.n)]
    b = form.coefficients
    for i, j in itertools.combinations(range(form.n), 2):
        c = b[i] * grads[j] - b[j] * grads[i]
        if c and not divides_poly(g, c):
            return False
    return True


def graph_variable(g: Polynomial) -> int | None:
    """Index ``k`` with ``g = c*x_k - h`` and ``h`` free of ``x_k``, if any."""
    for k in range(len(g.ctx)):
        if g.degree_in(k) != 1:
            continue
        lin = g.diff(k)
        if lin.is_constant() and lin:
            return k
    return None


def restrict_to_graph(form: OneForm, g: Polynomial) -> OneForm:
    """Pull back ``form`` to the graph hypersurface ``V(g)`` parametrised by the other coordinates."""
    k = graph_variable(g)
    if k is None:
        raise UnsupportedError("restriction is implemented only for graph hypersurfaces x_k = h(others)")
    lin = g.diff(k).constant_coefficient()
    rest = g - Polynomial.var(g.ctx, k) * lin
    keep = [i for i in range(form.n) if i != k]
    sub = VarContext.of(*(form.ctx.names[i] for i in keep))
    solved = (-rest * (1 / lin)).to_context(sub) if not rest.support() & {k} else None
    if solved is None:
        raise UnsupportedError("graph hypersurface must be linear in its solved variable")
    phi = []
    for i in range(form.n):
        phi.append(solved if i == k else Polynomial.var(sub, form.ctx.names[i]))
    return pullback_form(form, phi)


# ---------------------------------------------------------------------------
# planar dual field and orders


@dataclass(frozen=True)
class DualField:
    field: tuple[Polynomial, Polynomial]
    linear_part: tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]


def dual_field_2d(form: OneForm, point: Sequence | None = None) -> DualField:
    """``X = (b, -a)`` for ``omega = a dx + b dy``, with its linear part at ``point``."""
    if form.n != 2:
        raise DimensionMismatchError("dual field is defined for planar forms only")
    if point is not None:
        form = form.translate(point)
    a, b = form.coefficients
    field = (b, -a)
    rows = []
    for comp in field:
        lin = comp.homogeneous_part(1)
        rows.append((lin.coefficient((1, 0)), lin.coefficient((0, 1))))
    return DualField(field, (rows[0], rows[1]))


@dataclass(frozen=True)
class OrderCriterion:
    order_g: float
    min_order_b: float
    holds: bool
    point_is_singular: bool


def order_criterion_check(form: OneForm, g: Polynomial, point: Sequence) -> OrderCriterion:
    """``ord_P g <= 1 + min_i ord_P b_i`` at the supplied point."""
    pt = as_point(point)
    if len(pt) != form.n:
        raise DimensionMismatchError("point dimension differs from the form's")
    og = order_at_point(g, pt, range(form.n))
    ob = min(order_at_point(b, pt, range(form.n)) for b in form.coefficients)
    holds = og <= 1 + ob
    return OrderCriterion(og, ob, holds, is_singular_point(form, pt))


def order_along_ideal(g: Polynomial, ideal: Ideal, max_power: int = 6) -> int:
    """Largest ``s <= max_power`` with ``g`` in ``ideal^s`` (slow alternative mode)."""
    if not ideal_member(g, ideal):
        return 0
    power = ideal
    s = 1
    while s < max_power:
        nxt = Ideal(ideal.ctx, [p * q for p in power.generators for q in ideal.generators])
        if not ideal_member(g, nxt):
            return s
        power = nxt
        s += 1
    return s


def finite_order(value: float) -> int | None:
    return None if value == math.inf else int(value)
