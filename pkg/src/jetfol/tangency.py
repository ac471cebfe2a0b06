"""Weak, strong and full tangency of subschemes to foliations, checked order by order."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import Polynomial, VarContext, as_point
from .errors import DimensionMismatchError, UnsupportedError, UserInputError
from .foliation import (
    OneForm,
    graph_variable,
    invariant_hypersurface_check,
    is_saturated,
    restrict_to_graph,
)
from .groebner import Ideal, groebner, ideal_equal, ideal_member, is_unit_ideal, radical_member
from .jets import JetIdeal, jet_fiber, jet_ideal_foliation, jet_ideal_scheme, jet_point_satisfies

MODES = ("weak", "strong", "full")
CONTAINMENT = ("scheme", "set")


@dataclass(frozen=True)
class Failure:
    order: int
    generator: Polynomial | None = None
    jet: tuple[tuple[Fraction, ...], ...] | None = None  # arc coefficients per coordinate
    note: str = ""


@dataclass(frozen=True)
class TangencyVerdict:
    mode: str
    max_order_checked: int
    containment: str
    result: bool
    first_failure: Failure | None = None

    def __bool__(self):
        return self.result


def _shared(ideal: Ideal, form: OneForm) -> Ideal:
    if ideal.ctx.names != form.ctx.names:
        missing = [n for n in ideal.ctx.names if n not in form.ctx]
        if missing:
            raise UserInputError(f"ideal uses variables {missing} absent from the form")
        return ideal.to_context(form.ctx)
    return ideal


def _check_containment(mode: str):
    if mode not in CONTAINMENT:
        raise UserInputError(f"containment mode must be one of {CONTAINMENT}")


def _first_outside(gens: Sequence[Polynomial], target: Ideal, mode: str) -> Polynomial | None:
    test = ideal_member if mode == "scheme" else radical_member
    for g in gens:
        if g and not test(g, target):
            return g
    return None


def _foliation_on(ctx: VarContext, fol: JetIdeal) -> list[Polynomial]:
    return [p.to_context(ctx) for _, p in fol.coefficients]


def jets_contained(scheme: JetIdeal, fol: JetIdeal, mode: str = "scheme") -> Polynomial | None:
    """First foliation jet generator outside the scheme's jet ideal, or ``None``."""
    return _first_outside(_foliation_on(scheme.ctx, fol), scheme.ideal, mode)


def weak_tangency(ideal: Ideal, form: OneForm, containment: str = "scheme") -> TangencyVerdict:
    return strong_tangency_up_to(ideal, form, 1, containment, search_witness=False, mode_name="weak")


def strong_tangency_up_to(
    ideal: Ideal,
    form: OneForm,
    m: int = 5,
    containment: str = "scheme",
    point: Sequence | None = None,
    search_witness: bool = True,
    mode_name: str = "strong",
) -> TangencyVerdict:
    """``J_k(C) in J_k(F)`` for every ``k <= m``; over ``point`` only if one is given."""
    _check_containment(containment)
    if m < 1:
        raise UserInputError("tangency order must be at least 1")
    ideal = _shared(ideal, form)
    for k in range(1, m + 1):
        scheme = jet_ideal_scheme(ideal, k, point)
        fol = jet_ideal_foliation(form, k, point)
        bad = jets_contained(scheme, fol, containment)
        if bad is not None:
            jet = find_witness_jet(ideal, form, k, point) if search_witness else None
            return TangencyVerdict(mode_name, k, containment, False, Failure(k, bad, jet))
    return TangencyVerdict(mode_name, m, containment, True)


def restricted_foliation_jets(ideal: Ideal, form: OneForm, k: int) -> Ideal:
    """``J_k(F)|_C``: foliation jets plus the equations of ``C`` in the base coordinates ``a_i0``."""
    fol = jet_ideal_foliation(form, k)
    ctx = fol.ctx
    base = [Polynomial.var(ctx, ctx.jet_variable(i, 0)) for i in range(1, len(form.ctx) + 1)]
    from .algebra import compose

    lifted = [compose(g, base) for g in ideal.generators]
    return Ideal(ctx, list(fol.ideal.generators) + lifted)


def full_tangency_up_to(ideal: Ideal, form: OneForm, m: int = 5, containment: str = "scheme") -> TangencyVerdict:
    """``J_k(C) = J_k(F)|_C`` for every ``k <= m``."""
    _check_containment(containment)
    if m < 1:
        raise UserInputError("tangency order must be at least 1")
    ideal = _shared(ideal, form)
    for k in range(1, m + 1):
        scheme = jet_ideal_scheme(ideal, k).ideal
        restricted = restricted_foliation_jets(ideal, form, k)
        if not ideal_equal(scheme, restricted, containment):
            bad = _first_outside(restricted.generators, scheme, containment)
            note = "foliation jets not contained" if bad is not None else "scheme jets not contained"
            if bad is None:
                bad = _first_outside(scheme.generators, restricted, containment)
            return TangencyVerdict("full", k, containment, False, Failure(k, bad, None, note))
    return TangencyVerdict("full", m, containment, True)


# ---------------------------------------------------------------------------
# witnesses


def jet_witness_check(ideal: Ideal, form: OneForm, arcs: Sequence[Sequence], m: int) -> tuple[bool, bool]:
    """For the arc with coefficient lists ``arcs`` return (on J_m(C), on J_m(F))."""
    ideal = _shared(ideal, form)
    n = len(form.ctx)
    if len(arcs) != n:
        raise DimensionMismatchError("one coefficient list per coordinate expected")
    values = {}
    for i, coeffs in enumerate(arcs, start=1):
        padded = list(coeffs) + [0] * (m + 1 - len(coeffs))
        for j in range(m + 1):
            values[f"a_{i}_{j}"] = Fraction(padded[j])
    scheme = jet_ideal_scheme(ideal, m)
    fol = jet_ideal_foliation(form, m)
    return jet_point_satisfies(scheme, values), jet_point_satisfies(fol, values)


def _base_points(ideal: Ideal, point, bound: int = 1):
    if point is not None:
        yield as_point(point)
        return
    n = len(ideal.ctx)
    pts = sorted(itertools.product(range(-bound, bound + 1), repeat=n), key=lambda p: (sum(map(abs, p)), p))
    for p in pts:
        if all(g(*p) == 0 for g in ideal.generators):
            yield as_point(p)


def find_witness_jet(ideal: Ideal, form: OneForm, m: int, point=None, bound: int = 2, limit: int = 200000):
    """Small-integer jet on ``J_m(C)`` but off ``J_m(F)``, smallest entries first."""
    n = len(form.ctx)
    values = sorted(range(-bound, bound + 1), key=lambda v: (abs(v), v < 0))
    tried = 0
    for base in _base_points(ideal, point):
        scheme = jet_ideal_scheme(ideal, m, base)
        fol = jet_ideal_foliation(form, m, base)
        names = scheme.ctx.names
        combos = sorted(
            itertools.product(values, repeat=len(names)),
            key=lambda c: (max(map(abs, c), default=0), sum(map(abs, c))),
        )
        for combo in combos:
            tried += 1
            if tried > limit:
                return None
            assignment = dict(zip(names, combo))
            if jet_point_satisfies(scheme, assignment) and not jet_point_satisfies(fol, assignment):
                arcs = []
                for i in range(1, n + 1):
                    arcs.append(tuple([base[i - 1]] + [Fraction(assignment[f"a_{i}_{j}"]) for j in range(1, m + 1)]))
                return tuple(arcs)
    return None


# ---------------------------------------------------------------------------
# utilities


def full_jet_depth(ideal: Ideal, point: Sequence, max_probe: int = 6) -> int:
    """Largest ``r <= max_probe`` with every fibre ``J_k(Y, P)``, ``k <= r``, the whole space."""
    pt = as_point(point)
    if len(pt) != len(ideal.ctx):
        raise DimensionMismatchError("point dimension differs from the ideal's")
    if any(g(*pt) != 0 for g in ideal.generators):
        raise UserInputError("point does not lie on the scheme")
    r = 0
    for k in range(1, max_probe + 1):
        fib = jet_ideal_scheme(ideal, k, pt)
        if any(p for _, p in fib.coefficients):
            break
        r = k
    return r


@dataclass(frozen=True)
class TransversalityReport:
    result: bool
    smooth: bool
    solution: bool
    restriction_saturated: bool | None
    reasons: tuple[str, ...]


def truly_transversal_check(g: Polynomial, form: OneForm) -> TransversalityReport:
    """Smooth, not a solution, and with a saturated restricted foliation."""
    if len(form.ctx) < 2:
        raise UserInputError("transversality needs at least two variables")
    if g.ctx.names != form.ctx.names:
        g = g.to_context(form.ctx)
    reasons = []
    jac = Ideal(g.ctx, [g] + [g.diff(k) for k in range(len(g.ctx))])
    smooth = is_unit_ideal(jac)
    if not smooth:
        reasons.append("hypersurface is singular or non-reduced")
    solution = invariant_hypersurface_check(form, g)
    if solution:
        reasons.append("hypersurface is a solution of the foliation")
    restricted = None
    if smooth and not solution:
        if graph_variable(g) is None:
            raise UnsupportedError("restriction test needs a graph hypersurface x_k = h(others)")
        res = restrict_to_graph(form, g)
        restricted = (not res.is_zero()) and is_saturated(res)
        if not restricted:
            reasons.append("restricted foliation is not saturated")
    result = smooth and not solution and bool(restricted)
    return TransversalityReport(result, smooth, solution, restricted, tuple(reasons))
