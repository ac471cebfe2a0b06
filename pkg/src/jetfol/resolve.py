"""Bounded resolution of planar foliation singularities by point blow-ups.

Only rational singular points are blown up.  Points whose coordinates are
not rational are kept as a residual ideal and downgrade the verdict.
Singular points at infinity are out of reach of this affine driver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra import NotDivisibleError, Polynomial, compose, exact_divide, gcd_many
from .blowup import Chart, blowup_point_charts, poly_valuation, transform_form
from .classify import EigenData, SingularityClass, classify_reduced_2d
from .errors import DimensionMismatchError, UserInputError
from .foliation import OneForm, format_form, invariant_hypersurface_check, saturate_form
from .groebner import Ideal, eliminate, intersect_all, is_unit_ideal
from .printing import format_point, format_polynomial, format_rational

VERDICTS = ("AllReducedWithinDepth", "DicriticalDetected", "DepthExhausted", "NonRationalPointsSkipped")


# ---------------------------------------------------------------------------
# rational roots and singular points


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    k = 1
    while k * k <= n:
        if n % k == 0:
            small.append(k)
            if k * k != n:
                large.append(n // k)
        k += 1
    return small + large[::-1]


def rational_roots(coeffs: Sequence[Fraction]) -> list[Fraction]:
    """Distinct rational roots of ``sum coeffs[k] t^k`` by the rational root test."""
    coeffs = [Fraction(c) for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) <= 1:
        return []
    roots = []
    if coeffs[0] == 0:
        roots.append(Fraction(0))
        while coeffs[0] == 0:
            coeffs.pop(0)
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    lead, const = ints[-1], ints[0]
    for p in _divisors(const):
        for q in _divisors(lead):
            if math.gcd(p, q) != 1:
                continue
            for cand in (Fraction(p, q), Fraction(-p, q)):
                val = 0
                for c in reversed(ints):
                    val = val * cand + c
                if val == 0 and cand not in roots:
                    roots.append(cand)
    return sorted(roots)


def _univariate_coeffs(p: Polynomial, k: int) -> list[Fraction]:
    deg = p.degree_in(k)
    out = [Fraction(0)] * (deg + 1)
    for e, c in p.terms.items():
        out[e[k]] += c
    return out


def _strip_roots(p: Polynomial, k: int, roots: Sequence[Fraction]) -> Polynomial:
    x = Polynomial.var(p.ctx, k)
    for r in roots:
        while True:
            try:
                p = exact_divide(p, x - r)
            except NotDivisibleError:
                break
    return p


def singular_points_2d(form: OneForm) -> tuple[list[tuple[Fraction, Fraction]], Ideal]:
    """Rational points of ``V(a, b)`` and an ideal for the remaining (non-rational) ones.

    The residual ideal is the unit ideal when every singular point is rational.
    """
    if len(form.ctx) != 2:
        raise DimensionMismatchError("singular point search handles planar forms")
    ctx = form.ctx
    gens = [b for b in form.coefficients if b]
    if not gens:
        raise UserInputError("the zero form defines no foliation")
    if not gcd_many(gens).is_constant():
        raise UserInputError("form is not saturated; its singular locus has a curve component")
    ideal = Ideal(ctx, gens)
    one = Ideal(ctx, [Polynomial.const(ctx, 1)])
    if is_unit_ideal(ideal):
        return [], one
    # y-eliminant: generator of I ∩ Q[y]
    elim = eliminate(ideal, [0])
    ypoly = gcd_many([g for g in elim.generators]) if elim.generators else None
    if ypoly is None or ypoly.is_zero():
        raise UserInputError("singular locus is not finite")
    ypoly = ypoly.to_context(ctx)
    y_roots = rational_roots(_univariate_coeffs(ypoly, 1))
    points = []
    parts = []
    rest_y = _strip_roots(ypoly, 1, y_roots)
    if not rest_y.is_constant():
        parts.append(Ideal(ctx, list(ideal.generators) + [rest_y]))
    for y0 in y_roots:
        xs = [g.evaluate({1: y0}) for g in ideal.generators]
        xs = [g for g in xs if g]
        if not xs:
            raise UserInputError("singular locus contains a horizontal line")
        xpoly = gcd_many(xs)
        if xpoly.is_constant():
            continue
        x_roots = rational_roots(_univariate_coeffs(xpoly, 0))
        points.extend((x0, y0) for x0 in x_roots)
        rest_x = _strip_roots(xpoly, 0, x_roots)
        if not rest_x.is_constant():
            parts.append(Ideal(ctx, [rest_x, Polynomial.var(ctx, 1) - y0]))
    residual = intersect_all(parts) if parts else one
    return sorted(points), residual


def point_separatrices(form: OneForm, point: Sequence) -> list[Polynomial]:
    """Invariant lines through ``point``: coordinate lines and rational eigen-directions."""
    from .foliation import dual_field_2d

    ctx = form.ctx
    px, py = (Fraction(v) for v in point)
    x, y = Polynomial.var(ctx, 0) - px, Polynomial.var(ctx, 1) - py
    cands = [x, y]
    lin = dual_field_2d(form, (px, py)).linear_part
    e = EigenData.of_matrix(lin)
    if e.eigenvalues is not None:
        (a, b), (c, d) = lin
        for lam in dict.fromkeys(e.eigenvalues):
            # direction (u, w) with (A - lam) (u, w) = 0
            if b != 0 or a - lam != 0:
                u, w = b, lam - a
            else:
                u, w = lam - d, c
            if u == 0 and w == 0:
                continue
            cands.append(x * w - y * u)
    out = []
    for g in cands:
        g = g.monic()
        if g not in out and invariant_hypersurface_check(form, g):
            out.append(g)
    return out


# ---------------------------------------------------------------------------
# the driver


@dataclass
class PointRecord:
    point: tuple[Fraction, Fraction]
    classification: SingularityClass
    on_exceptional: bool
    new: bool
    status: str  # reduced, blown_up, depth_exhausted, seen_elsewhere, off_exceptional
    children: list["ResolutionNode"] = field(default_factory=list)

    @property
    def dicritical(self) -> bool:
        return any(ch.exceptional_invariant is False for ch in self.children)


@dataclass
class ResolutionNode:
    depth: int
    chain: tuple[tuple[Chart, tuple[Fraction, Fraction]], ...]  # (chart, centre) pairs from the root
    form: OneForm  # saturated
    raw_form: OneForm  # total transform of the parent's saturated form (the input at the root)
    removed_factor: Polynomial
    exceptional_multiplicity: int | None
    cumulative_factor: Polynomial  # removed factors of the whole chain, pulled back
    cumulative_multiplicity: int | None
    exceptional_invariant: bool | None
    points: list[PointRecord]
    residual: Ideal

    @property
    def chart(self) -> Chart | None:
        return self.chain[-1][0] if self.chain else None

    def walk(self):
        yield self
        for p in self.points:
            for ch in p.children:
                yield from ch.walk()


@dataclass
class ResolutionReport:
    root: ResolutionNode
    verdict: str
    max_depth: int
    statistics: dict


_DONE = ("Reduced", "Smooth", "NotSingular")


def _node(depth, chain, form, raw, removed, cumulative, max_depth, stats) -> ResolutionNode:
    chart = chain[-1][0] if chain else None
    pts, residual = singular_points_2d(form)
    s = None if chart is None else poly_valuation(removed, chart.exceptional)
    cs = None if chart is None else poly_valuation(cumulative, chart.exceptional)
    inv = None if chart is None else invariant_hypersurface_check(form, chart.exceptional)
    if not is_unit_ideal(residual):
        stats["non_rational_nodes"] += 1
    if inv is False:
        stats["dicritical_charts"] += 1
    records = []
    for p in pts:
        cls = classify_reduced_2d(form, p)
        on_exc = True if chart is None else chart.on_exceptional(p)
        new = True if chart is None else chart.is_new_point(p)
        if not on_exc:
            status = "off_exceptional"
        elif not new:
            status = "seen_elsewhere"
        elif cls.tag in _DONE:
            status = "reduced"
        elif depth >= max_depth:
            status = "depth_exhausted"
            stats["unresolved_points"] += 1
        else:
            status = "blown_up"
        rec = PointRecord(p, cls, on_exc, new, status)
        if status == "blown_up":
            stats["blowups"] += 1
            for ch in blowup_point_charts(form.ctx, p, depth):
                t = transform_form(form, ch)
                pulled = compose(cumulative, list(ch.images)) * t.factor
                rec.children.append(
                    _node(depth + 1, chain + ((ch, p),), t.saturated_form, t.raw_form, t.factor, pulled, max_depth, stats)
                )
        records.append(rec)
    stats["nodes"] += 1
    return ResolutionNode(depth, chain, form, raw, removed, s, cumulative, cs, inv, records, residual)


def resolve_2d(form: OneForm, max_depth: int = 6) -> ResolutionReport:
    if len(form.ctx) != 2:
        raise DimensionMismatchError("the resolution driver handles planar forms")
    if max_depth < 0:
        raise UserInputError("depth must be nonnegative")
    factor, sat = saturate_form(form)
    stats = {"nodes": 0, "blowups": 0, "dicritical_charts": 0, "non_rational_nodes": 0, "unresolved_points": 0}
    root = _node(0, (), sat, form, factor, factor, max_depth, stats)
    if stats["dicritical_charts"]:
        verdict = "DicriticalDetected"
    elif stats["non_rational_nodes"]:
        verdict = "NonRationalPointsSkipped"
    elif stats["unresolved_points"]:
        verdict = "DepthExhausted"
    else:
        verdict = "AllReducedWithinDepth"
    return ResolutionReport(root, verdict, max_depth, stats)


# ---------------------------------------------------------------------------
# rendering


def linear_power_string(p: Polynomial, centers: Sequence[Sequence[Fraction]] = ()) -> str:
    """Write ``p`` as a product of powers of ``x_k - c`` (``c`` zero or a centre coordinate) times a cofactor."""
    ctx = p.ctx
    parts = []
    rest = p
    for k in range(len(ctx)):
        values = sorted({Fraction(0)} | {Fraction(c[k]) for c in centers if k < len(c)})
        for c in values:
            lin = Polynomial.var(ctx, k) - c
            e = 0
            while not rest.is_constant():
                try:
                    rest = exact_divide(rest, lin)
                except NotDivisibleError:
                    break
                e += 1
            if e:
                base = format_polynomial(lin)
                base = base if c == 0 else f"({base})"
                parts.append(base if e == 1 else f"{base}^{e}")
    unit = rest.leading_term()[1]
    rest = rest.monic()
    if rest != 1:
        r = format_polynomial(rest)
        parts.append(f"({r})" if len(rest) > 1 else r)
    if unit != 1:
        parts.insert(0, f"({format_rational(unit)})" if unit < 0 else format_rational(unit))
    return "*".join(parts) if parts else "1"


def factored_form_string(factor: Polynomial, form: OneForm, centers: Sequence = ()) -> str:
    """``factor*(form)`` with the factor omitted when it is 1."""
    body = format_form(form)
    if factor == 1:
        return body
    return f"{linear_power_string(factor, centers)}*({body})"


def _centers(node: "ResolutionNode") -> list:
    return [p for _, p in node.chain]


def classification_document(c: SingularityClass) -> dict:
    doc = {"tag": c.tag, "point": format_point(c.point)}
    if c.eigen is not None:
        e = c.eigen
        doc["eigen"] = {
            "trace": format_rational(e.trace),
            "det": format_rational(e.det),
            "discriminant": format_rational(e.discriminant),
            "kind": e.kind,
            "eigenvalues": None if e.eigenvalues is None else [format_rational(v) for v in e.eigenvalues],
        }
    if c.linear_part is not None:
        doc["linear_part"] = [[format_rational(v) for v in row] for row in c.linear_part]
    if c.detail:
        doc["detail"] = {k: (format_rational(v) if isinstance(v, Fraction) else (format_polynomial(v) if isinstance(v, Polynomial) else v)) for k, v in sorted(c.detail.items())}
    return doc


def _node_doc(node: ResolutionNode) -> dict:
    doc = {
        "depth": node.depth,
        "chart_chain": [
            {"center": format_point(p), "chart": ch.index + 1, "substitution": ch.describe()} for ch, p in node.chain
        ],
        "variables": list(node.form.ctx.names),
        "total_transform": format_form(node.raw_form),
        "removed_factor": format_polynomial(node.removed_factor),
        "saturated_form": format_form(node.form),
        "cumulative_form": factored_form_string(node.cumulative_factor, node.form, _centers(node)),
        "exceptional_multiplicity": node.exceptional_multiplicity,
        "cumulative_multiplicity": node.cumulative_multiplicity,
        "exceptional_invariant": node.exceptional_invariant,
        "singular_points": [],
        "residual": None if is_unit_ideal(node.residual) else [format_polynomial(g) for g in node.residual.generators],
    }
    for rec in node.points:
        doc["singular_points"].append(
            {
                "point": format_point(rec.point),
                "classification": classification_document(rec.classification),
                "on_exceptional": rec.on_exceptional,
                "new": rec.new,
                "status": rec.status,
                "dicritical": rec.dicritical,
                "children": [_node_doc(ch) for ch in rec.children],
            }
        )
    return doc


def report_render(report: ResolutionReport) -> dict:
    """Deterministic document for a resolution report; key order is fixed."""
    return {
        "verdict": report.verdict,
        "max_depth": report.max_depth,
        "statistics": dict(report.statistics),
        "tree": _node_doc(report.root),
    }


def report_text(report: ResolutionReport) -> str:
    lines = [f"verdict: {report.verdict} (max depth {report.max_depth})"]

    def walk(node: ResolutionNode, indent: str):
        head = "root" if not node.chain else f"chart {node.chart.describe()} at {format_point(node.chain[-1][1])}"
        lines.append(f"{indent}{head}: {factored_form_string(node.cumulative_factor, node.form, _centers(node))}")
        if node.chain:
            lines.append(
                f"{indent}  exceptional multiplicity {node.exceptional_multiplicity}"
                f" (cumulative {node.cumulative_multiplicity}), invariant: {node.exceptional_invariant}"
            )
        if not is_unit_ideal(node.residual):
            lines.append(f"{indent}  non-rational points: {[str(g) for g in node.residual.generators]}")
        for rec in node.points:
            flag = " dicritical" if rec.dicritical else ""
            lines.append(f"{indent}  point {format_point(rec.point)}: {rec.classification.tag} [{rec.status}]{flag}")
            for ch in rec.children:
                walk(ch, indent + "    ")

    walk(report.root, "")
    return "\n".join(lines)
