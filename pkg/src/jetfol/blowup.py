"""Point blow-ups in coordinate charts.

Chart ``j`` of the blow-up at ``P`` keeps the coordinate ``x_j`` and
replaces every other ``x_i`` by a fresh ``v_i`` through
``x_i = P_i + (x_j - P_j) * v_i``.  The exceptional divisor is
``V(x_j - P_j)``; the centre's preimage in the chart is ``x_j = P_j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import NotDivisibleError, Point, Polynomial, VarContext, as_point, compose, exact_divide
from .errors import DimensionMismatchError, UserInputError
from .foliation import OneForm, invariant_hypersurface_check, pullback_form, saturate_form
from .groebner import Ideal, is_unit_ideal, saturate_ideal

# Replacement names per blow-up level, one per chart in the plane.
_PLANAR_NAMES = (("v", "b"), ("t", "s"), ("u", "r"), ("w", "q"), ("p", "c"))


@dataclass(frozen=True)
class Chart:
    index: int  # 0-based position of the kept coordinate
    center: Point
    target: VarContext  # coordinates before the blow-up
    source: VarContext  # chart coordinates
    images: tuple[Polynomial, ...]  # x_i as polynomials in the chart coordinates

    @property
    def exceptional_var(self) -> str:
        return self.source.names[self.index]

    @property
    def exceptional(self) -> Polynomial:
        """Equation of the exceptional divisor, ``x_j - P_j``."""
        return Polynomial.var(self.source, self.index) - self.center[self.index]

    def describe(self) -> str:
        from .printing import format_polynomial

        parts = []
        j = self.index
        e = format_polynomial(self.exceptional)
        e = e if len(self.exceptional) == 1 else f"({e})"
        for i, name in enumerate(self.target.names):
            if i == j:
                continue
            lhs = name if self.center[i] == 0 else f"{name} - {self.center[i]}"
            parts.append(f"{lhs} = {e}*{self.source.names[i]}")
        return ", ".join(parts)

    def on_exceptional(self, point: Sequence) -> bool:
        return as_point(point)[self.index] == self.center[self.index]

    def is_new_point(self, point: Sequence) -> bool:
        """Whether an exceptional point is first seen in this chart.

        A direction with ``v_i != 0`` for some ``i < j`` also shows up in chart ``i``.
        """
        pt = as_point(point)
        return self.on_exceptional(pt) and all(pt[i] == 0 for i in range(self.index))


def _chart_names(ctx: VarContext, j: int, level: int) -> tuple[str, ...]:
    n = len(ctx)
    names = list(ctx.names)
    taken = set(names)
    for i in range(n):
        if i == j:
            continue
        stem = None
        if n == 2 and level < len(_PLANAR_NAMES):
            cand = _PLANAR_NAMES[level][j]
            if cand not in taken:
                stem = cand
        if stem is None:
            stem = f"v{i + 1}"
            k = 1
            while stem in taken:
                stem = f"v{i + 1}_{k}"
                k += 1
        taken.discard(names[i])
        names[i] = stem
        taken.add(stem)
    return tuple(names)


def blowup_point_charts(ctx: VarContext | int, point: Sequence | None = None, level: int = 0) -> list[Chart]:
    """The ``n`` standard charts of the blow-up at ``point`` (origin by default)."""
    if isinstance(ctx, int):
        ctx = VarContext.of(*(("x", "y") if ctx == 2 else tuple(f"x{i + 1}" for i in range(ctx))))
    n = len(ctx)
    if n < 2:
        raise UserInputError("blow-ups need at least two variables")
    pt = as_point(point) if point is not None else (Fraction(0),) * n
    if len(pt) != n:
        raise DimensionMismatchError(f"point has {len(pt)} coordinates, expected {n}")
    charts = []
    for j in range(n):
        src = VarContext.of(*_chart_names(ctx, j, level))
        xj = Polynomial.var(src, j)
        e = xj - pt[j]
        images = tuple(xj if i == j else e * Polynomial.var(src, i) + pt[i] for i in range(n))
        charts.append(Chart(j, pt, ctx, src, images))
    return charts


def poly_valuation(f: Polynomial, g: Polynomial) -> int:
    """Largest ``s`` with ``g^s`` dividing ``f`` (``f`` nonzero, ``g`` nonconstant)."""
    if f.is_zero():
        raise ValueError("valuation of zero is infinite")
    s = 0
    while True:
        try:
            f = exact_divide(f, g)
        except NotDivisibleError:
            return s
        s += 1


@dataclass(frozen=True)
class TransformResult:
    chart: Chart
    raw_form: OneForm
    factor: Polynomial  # gcd removed by saturation
    exceptional_multiplicity: int
    saturated_form: OneForm
    exceptional_invariant: bool


def transform_form(form: OneForm, chart: Chart) -> TransformResult:
    """Total transform, its saturation, and whether the exceptional divisor is invariant."""
    if form.ctx.names != chart.target.names:
        raise UserInputError("form does not live on the chart's target coordinates")
    raw = pullback_form(form, chart.images)
    factor, sat = saturate_form(raw)
    s = poly_valuation(factor, chart.exceptional)
    inv = invariant_hypersurface_check(sat, chart.exceptional)
    return TransformResult(chart, raw, factor, s, sat, inv)


def strict_transform_scheme(ideal: Ideal, chart: Chart) -> Ideal:
    """Substitute the chart and saturate away the exceptional divisor."""
    if ideal.ctx.names != chart.target.names:
        ideal = ideal.to_context(chart.target)
    total = Ideal(chart.source, [compose(g, list(chart.images)) for g in ideal.generators])
    return saturate_ideal(total, chart.exceptional)


def blow_down(form: OneForm, chart: Chart) -> OneForm:
    """Push a chart form back through ``v_i = (x_i - P_i) / (x_j - P_j)``, clearing denominators.

    Returns ``e^(D+2)`` times the pushed-forward form, ``e = x_j - P_j`` and
    ``D`` the largest degree of a coefficient in the ``v_i``.  For a form from
    :func:`transform_form` this is a polynomial multiple of the original.
    """
    j = chart.index
    tgt = chart.target
    n = len(tgt)
    xs = [Polynomial.var(tgt, i) for i in range(n)]
    e = xs[j] - chart.center[j]
    num = [xs[i] - chart.center[i] for i in range(n)]
    depth = max((sum(x for i, x in enumerate(exps) if i != j) for b in form.coefficients for exps in b.terms), default=0)

    def lift(p: Polynomial) -> Polynomial:
        acc = Polynomial.zero(tgt)
        for exps, c in p.terms.items():
            vdeg = sum(k for i, k in enumerate(exps) if i != j)
            term = Polynomial.const(tgt, c) * e ** (depth - vdeg)
            for i, k in enumerate(exps):
                if k:
                    term = term * (xs[j] if i == j else num[i]) ** k
            acc = acc + term
        return acc

    coeffs = [Polynomial.zero(tgt) for _ in range(n)]
    for i, b in enumerate(form.coefficients):
        if not b:
            continue
        lb = lift(b)
        if i == j:
            coeffs[j] = coeffs[j] + lb * e * e
        else:
            coeffs[i] = coeffs[i] + lb * e
            coeffs[j] = coeffs[j] - lb * num[i]
    return OneForm(tgt, tuple(coeffs))


# ---------------------------------------------------------------------------
# dicriticality probe


@dataclass(frozen=True)
class ProbeStep:
    chain: tuple[Chart, ...]
    point: Point
    transform: TransformResult


@dataclass(frozen=True)
class DicriticalReport:
    dicritical: bool
    depth_searched: int
    witness: tuple[ProbeStep, ...] | None
    skipped: tuple[str, ...]

    @property
    def message(self) -> str:
        if self.dicritical:
            return "dicritical component found"
        return f"no dicritical component found up to depth {self.depth_searched}"


def dicritical_probe(form: OneForm, max_depth: int = 3) -> DicriticalReport:
    """Breadth-first blow-ups over rational singular points, looking for a non-invariant exceptional divisor."""
    from .resolve import singular_points_2d

    if len(form.ctx) != 2:
        raise DimensionMismatchError("the dicriticality probe handles planar forms")
    if max_depth < 0:
        raise UserInputError("depth must be nonnegative")
    _, sat = saturate_form(form)
    pts, residual = singular_points_2d(sat)
    skipped = []
    if not is_unit_ideal(residual):
        skipped.append(f"non-rational singular points at depth 0: {residual}")
    frontier = [(sat, (), p) for p in pts]
    depth = 0
    for level in range(max_depth):
        depth = level + 1
        nxt = []
        for node_form, path, p in frontier:
            for chart in blowup_point_charts(node_form.ctx, p, level):
                res = transform_form(node_form, chart)
                step = ProbeStep(tuple(s.transform.chart for s in path) + (chart,), p, res)
                new_path = path + (step,)
                if not res.exceptional_invariant:
                    return DicriticalReport(True, depth, new_path, tuple(skipped))
                cpts, cres = singular_points_2d(res.saturated_form)
                if not is_unit_ideal(cres):
                    skipped.append(f"non-rational singular points in chart {chart.describe()}: {cres}")
                for q in cpts:
                    if chart.is_new_point(q):
                        nxt.append((res.saturated_form, new_path, q))
        frontier = nxt
        if not frontier:
            break
    return DicriticalReport(False, depth, None, tuple(skipped))
