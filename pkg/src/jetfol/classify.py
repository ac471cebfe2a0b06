"""Classification of foliation singularities.

Planar points are sorted by the eigenvalues of the dual field's linear
part.  In any dimension the module offers the adapted order and
multiplicity, the pre-simple test, literal normal forms, a comparison of
foliation jets with those of a normal-crossings divisor, and a degree-bounded
estimate of the dimensional type.

A note on ratios: if the eigenvalues are irrational real conjugates
``(s + sqrt(d))/2`` and ``(s - sqrt(d))/2``, a rational ratio ``q`` would give
``(1 - q) sqrt(d) = -(1 + q) s`` hence ``q = 1`` or ``sqrt(d)`` rational, both
impossible; so their ratio is never in Q+.  Complex conjugates have a real
ratio only when it equals 1 and the discriminant vanishes, which is the
double case.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra import NotDivisibleError, Polynomial, VarContext, as_point, exact_divide, order_at_point
from .errors import DimensionMismatchError, UserInputError
from .foliation import (
    OneForm,
    dual_field_2d,
    invariant_hypersurface_check,
    is_singular_point,
    saturate_form,
)
from .groebner import Ideal, buchberger, ideal_equal, ideal_contains_scheme, ideal_member
from .jets import jet_ideal_foliation, nc_jet_oracle

TAGS = (
    "Reduced",
    "PreSimpleA_Resonant",
    "TypeC_Shape",
    "Nilpotent_NonPreSimple",
    "ZeroLinear_NonPreSimple",
    "Smooth",
    "NotSingular",
)


# ---------------------------------------------------------------------------
# eigenvalues


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or ``None`` when irrational."""
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class EigenData:
    trace: Fraction
    det: Fraction
    discriminant: Fraction
    kind: str  # "rational", "double", "irrational_real", "complex"
    eigenvalues: tuple[Fraction, Fraction] | None = None

    @classmethod
    def of_matrix(cls, m) -> "EigenData":
        (a, b), (c, d) = m
        tr = Fraction(a) + Fraction(d)
        det = Fraction(a) * Fraction(d) - Fraction(b) * Fraction(c)
        disc = tr * tr - 4 * det
        if disc == 0:
            return cls(tr, det, disc, "double", (tr / 2, tr / 2))
        if disc < 0:
            return cls(tr, det, disc, "complex")
        root = rational_sqrt(disc)
        if root is None:
            return cls(tr, det, disc, "irrational_real")
        return cls(tr, det, disc, "rational", ((tr + root) / 2, (tr - root) / 2))

    @property
    def both_zero(self) -> bool:
        return self.trace == 0 and self.det == 0


def ratio_in_positive_rationals(e: EigenData) -> bool:
    if e.both_zero:
        raise UserInputError("both eigenvalues vanish; the ratio is undefined")
    if e.kind in ("irrational_real", "complex"):
        return False
    l1, l2 = e.eigenvalues
    if l1 == 0 or l2 == 0:
        return False
    return l1 / l2 > 0


# ---------------------------------------------------------------------------
# planar classification


@dataclass(frozen=True)
class SingularityClass:
    tag: str
    point: tuple[Fraction, ...]
    eigen: EigenData | None = None
    linear_part: tuple | None = None
    detail: dict = field(default_factory=dict)

    @property
    def reduced(self) -> bool:
        return self.tag == "Reduced"


def _is_scalar(m) -> bool:
    (a, b), (c, d) = m
    return b == 0 and c == 0 and a == d


def _type_c_shape(form: OneForm, r: int) -> dict | None:
    """Match ``c*(y dx - (r x + a y^r) dy)`` (or with x and y swapped), ``a != 0``."""
    for swap in (False, True):
        a_, b_ = form.coefficients if not swap else form.coefficients[::-1]
        ctx = form.ctx
        u = Polynomial.var(ctx, 0 if not swap else 1)  # the dx-slot variable
        w = Polynomial.var(ctx, 1 if not swap else 0)
        if len(a_) != 1:
            continue
        (exps, c), = a_.terms.items()
        if Polynomial(ctx, {exps: Fraction(1)}) != w:
            continue
        rest = b_ * (1 / c) + u * r
        if len(rest) == 1:
            (e2, coeff), = rest.terms.items()
            if Polynomial(ctx, {e2: Fraction(1)}) == w ** r:
                return {"r": r, "a": -coeff, "swapped": swap}
    return None


def classify_reduced_2d(form: OneForm, point: Sequence = (0, 0)) -> SingularityClass:
    if len(form.ctx) != 2:
        raise DimensionMismatchError("planar classification needs two variables")
    pt = as_point(point)
    if len(pt) != 2:
        raise DimensionMismatchError("point must have two coordinates")
    if not is_singular_point(form, pt):
        return SingularityClass("NotSingular", pt)
    factor, sat = saturate_form(form)
    if not is_singular_point(sat, pt):
        return SingularityClass("Smooth", pt, detail={"removed_factor": factor})
    local = sat.translate(pt)
    dual = dual_field_2d(local)
    lin = dual.linear_part
    e = EigenData.of_matrix(lin)
    if all(v == 0 for row in lin for v in row):
        return SingularityClass("ZeroLinear_NonPreSimple", pt, e, lin)
    if e.both_zero:
        return SingularityClass("Nilpotent_NonPreSimple", pt, e, lin)
    if not ratio_in_positive_rationals(e):
        return SingularityClass("Reduced", pt, e, lin)
    l1, l2 = e.eigenvalues
    ratio = max(l1 / l2, l2 / l1)
    if ratio == 1:
        if _is_scalar(lin):
            return SingularityClass("PreSimpleA_Resonant", pt, e, lin, {"ratio": ratio})
        return SingularityClass("TypeC_Shape", pt, e, lin, {"ratio": ratio, "r": 1})
    if ratio.denominator == 1:
        shape = _type_c_shape(local, int(ratio))
        if shape is not None:
            return SingularityClass("TypeC_Shape", pt, e, lin, {"ratio": ratio, **shape})
    return SingularityClass("PreSimpleA_Resonant", pt, e, lin, {"ratio": ratio})


# ---------------------------------------------------------------------------
# resonance


def _clear_denominators(lams: Sequence[Fraction]) -> list[int]:
    den = 1
    for q in lams:
        den = den * q.denominator // math.gcd(den, q.denominator)
    return [int(q * den) for q in lams]


def _min_coins(weights: list[tuple[int, int]], limit: int):
    """``best[T]``: fewest coins (index, weight) summing to ``T``; returns counts and choices."""
    inf = math.inf
    best = [0] + [inf] * limit
    choice = [None] * (limit + 1)
    for total in range(1, limit + 1):
        for idx, w in weights:
            if w <= total and best[total - w] + 1 < best[total]:
                best[total] = best[total - w] + 1
                choice[total] = idx
    return best, choice


def resonance_check(lams: Sequence) -> tuple[int, ...] | None:
    """Minimal-sum ``phi >= 0``, ``phi != 0``, with ``sum phi_j lam_j = 0``; ``None`` if none exists."""
    lams = [Fraction(x) for x in lams]
    if not lams:
        return None
    for j, lam in enumerate(lams):
        if lam == 0:
            return tuple(1 if k == j else 0 for k in range(len(lams)))
    w = _clear_denominators(lams)
    pos = [(j, x) for j, x in enumerate(w) if x > 0]
    neg = [(j, -x) for j, x in enumerate(w) if x < 0]
    if not pos or not neg:
        return None
    # any pair gives a solution with best_sum entries; an optimum has at most
    # best_sum - 1 entries on each side, which bounds the balanced total
    best_sum = min((a + b) // math.gcd(a, b) for (_, a), (_, b) in itertools.product(pos, neg))
    bound = (best_sum - 1) * min(max(x for _, x in pos), max(x for _, x in neg))
    bp, cp = _min_coins(pos, bound)
    bn, cn = _min_coins(neg, bound)
    top = None
    for total in range(1, bound + 1):
        s = bp[total] + bn[total]
        if s < math.inf and (top is None or s < top[0]):
            top = (s, total)
    _, total = top
    phi = [0] * len(lams)
    for choices, weights in ((cp, dict(pos)), (cn, dict(neg))):
        t = total
        while t:
            idx = choices[t]
            phi[idx] += 1
            t -= weights[idx]
    return tuple(phi)


def resonance_brute_force(lams: Sequence, max_entry: int = 6) -> tuple[int, ...] | None:
    """Smallest-sum witness among entries ``<= max_entry``; used to cross-check."""
    lams = [Fraction(x) for x in lams]
    best = None
    for phi in itertools.product(range(max_entry + 1), repeat=len(lams)):
        if any(phi) and sum(p * q for p, q in zip(phi, lams)) == 0:
            if best is None or sum(phi) < sum(best):
                best = phi
    return best


# ---------------------------------------------------------------------------
# adapted order and multiplicity


@dataclass(frozen=True)
class AdaptedData:
    divisor: tuple[int, ...]
    coefficients: tuple[Polynomial, ...]  # the b_i of the adapted presentation, at the origin
    order: float
    multiplicity: float


def adapted_presentation(form: OneForm, divisor: Sequence[int], point: Sequence | None = None) -> AdaptedData:
    """Write ``omega = x_A (sum_{i in A} b_i dx_i/x_i + sum_{i not in A} b_i dx_i)`` at ``point``."""
    n = len(form.ctx)
    pt = as_point(point) if point is not None else (Fraction(0),) * n
    if len(pt) != n:
        raise DimensionMismatchError("point dimension differs from the form's")
    a = tuple(sorted({form.ctx.resolve(i) for i in divisor}))
    local = form.translate(pt)
    ctx = local.ctx
    xs = [Polynomial.var(ctx, i) for i in range(n)]
    for i in a:
        if not invariant_hypersurface_check(local, xs[i]):
            raise UserInputError(f"divisor component {ctx.names[i]} = {pt[i]} is not invariant")
    xa = Polynomial.const(ctx, 1)
    for i in a:
        xa = xa * xs[i]
    bs = []
    try:
        for i, c in enumerate(local.coefficients):
            bs.append(exact_divide(c * xs[i], xa) if i in a else exact_divide(c, xa))
    except NotDivisibleError:
        raise UserInputError("form does not factor through the divisor; it is not tangent as claimed") from None
    order = min(order_at_point(b) for b in bs)
    gens = [bs[i] for i in a] + [xs[j] * bs[i] for i in range(n) if i not in a for j in range(n)]
    mult = min(order_at_point(g) for g in gens)
    return AdaptedData(a, tuple(bs), order, mult)


def adapted_order(form: OneForm, divisor: Sequence[int], point: Sequence | None = None) -> float:
    return adapted_presentation(form, divisor, point).order


def adapted_multiplicity(form: OneForm, divisor: Sequence[int], point: Sequence | None = None) -> float:
    return adapted_presentation(form, divisor, point).multiplicity


@dataclass(frozen=True)
class PresimpleResult:
    presimple: bool
    branch: str  # "order0", "order1", "none"
    data: AdaptedData | None
    reason: str = ""


def presimple_check(form: OneForm, divisor: Sequence[int], point: Sequence | None = None) -> PresimpleResult:
    try:
        data = adapted_presentation(form, divisor, point)
    except UserInputError as exc:
        return PresimpleResult(False, "none", None, str(exc))
    if data.order == 0:
        return PresimpleResult(True, "order0", data)
    if data.order == 1 and data.multiplicity == 1:
        outside = [k for k in range(len(form.ctx)) if k not in data.divisor]
        for i in data.divisor:
            lin = data.coefficients[i].homogeneous_part(1)
            if any(lin.degree_in(k) > 0 for k in outside):
                return PresimpleResult(True, "order1", data)
        return PresimpleResult(False, "none", data, "linear parts depend only on the divisor variables")
    return PresimpleResult(False, "none", data, f"adapted order {data.order}, multiplicity {data.multiplicity}")


# ---------------------------------------------------------------------------
# normal forms


@dataclass(frozen=True)
class NormalFormSpec:
    """Parameters of the (A), (B), (C) normal forms.

    ``p`` holds ``p_1..p_k`` for (B) and ``p_2..p_k`` for (C).  ``lambdas``
    holds ``lambda_1..lambda_t`` for (A) and ``lambda_2..lambda_t`` otherwise.
    ``psi`` lists the coefficients of ``s, s^2, ...`` in the series ``Psi``.
    """

    type: str
    t: int
    k: int = 0
    p: tuple[int, ...] = ()
    lambdas: tuple[Fraction, ...] = ()
    psi: tuple[Fraction, ...] = ()
    n: int | None = None

    def validate(self):
        if self.type not in ("A", "B", "C"):
            raise UserInputError("normal form type must be A, B or C")
        if self.t < 1 or (self.n is not None and self.n < self.t):
            raise UserInputError("need 1 <= t <= n")
        if any(int(q) != q or q < 1 for q in self.p):
            raise UserInputError("the p_i must be positive integers")
        if self.type == "A":
            if self.k != 0 or len(self.lambdas) != self.t or any(Fraction(x) == 0 for x in self.lambdas):
                raise UserInputError("type A needs k = 0 and t nonzero lambdas")
        elif self.type == "B":
            if not 1 <= self.k <= self.t or len(self.p) != self.k or len(self.lambdas) != self.t - 1:
                raise UserInputError("type B needs 1 <= k <= t, k exponents and t-1 lambdas")
            if math.gcd(*self.p) != 1:
                raise UserInputError("the p_i of type B must have no common factor")
            if any(Fraction(self.lambdas[i - 2]) == 0 for i in range(self.k + 1, self.t + 1)):
                raise UserInputError("lambda_{k+1}..lambda_t must be nonzero")
            if not any(self.psi):
                raise UserInputError("Psi must be a nonzero series without constant term")
        else:
            if not 2 <= self.k <= self.t or len(self.p) != self.k - 1 or len(self.lambdas) != self.t - 1:
                raise UserInputError("type C needs 2 <= k <= t, k-1 exponents and t-1 lambdas")
            if any(Fraction(self.lambdas[i - 2]) == 0 for i in range(self.k + 1, self.t + 1)):
                raise UserInputError("lambda_{k+1}..lambda_t must be nonzero")


def _log_sum(xs, prod_all, weights, indices):
    """``prod_all * sum_i weights[i] dx_i / x_i`` as coefficient list (exact)."""
    out = [Polynomial.zero(prod_all.ctx) for _ in xs]
    for i, w in zip(indices, weights):
        if w:
            out[i] = out[i] + exact_divide(prod_all, xs[i]) * Fraction(w)
    return out


def normal_form_generate(spec: NormalFormSpec, names: Sequence[str] | None = None) -> OneForm:
    spec.validate()
    n = spec.n or spec.t
    if names is None:
        names = ("x", "y") if n == 2 else tuple(f"x{i + 1}" for i in range(n))
    ctx = VarContext.of(*names)
    xs = [Polynomial.var(ctx, i) for i in range(n)]
    t = spec.t
    one = Polynomial.const(ctx, 1)
    if spec.type == "A":
        prod = one
        for x in xs[:t]:
            prod = prod * x
        coeffs = _log_sum(xs, prod, spec.lambdas, range(t))
        return OneForm(ctx, tuple(coeffs))
    if spec.type == "B":
        k = spec.k
        prod = one
        for x in xs[:t]:
            prod = prod * x
        mono = one
        for x, p in zip(xs[:k], spec.p):
            mono = mono * x ** int(p)
        psi = Polynomial.zero(ctx)
        for j, c in enumerate(spec.psi, start=1):
            psi = psi + mono ** j * Fraction(c)
        first = _log_sum(xs, prod, spec.p, range(k))
        second = _log_sum(xs, prod, spec.lambdas, range(1, t))
        return OneForm(ctx, tuple(a + psi * b for a, b in zip(first, second)))
    k = spec.k
    prod = one
    for x in xs[1:t]:
        prod = prod * x
    mono = one
    for x, p in zip(xs[1:k], spec.p):
        mono = mono * x ** int(p)
    coeffs = [Polynomial.zero(ctx) for _ in range(n)]
    coeffs[0] = prod
    for a, b in zip(range(1, k), _log_sum(xs, prod, spec.p, range(1, k))[1:k]):
        coeffs[a] = coeffs[a] - xs[0] * b
    lam = _log_sum(xs, prod, spec.lambdas, range(1, t))
    coeffs = [c + mono * l for c, l in zip(coeffs, lam)]
    return OneForm(ctx, tuple(coeffs))


# ---------------------------------------------------------------------------
# jet comparison with the normal-crossings divisor


@dataclass(frozen=True)
class JetComparison:
    verdict: str  # "EqualsNCOracle", "SchemeStrictlyLarger", "Other"
    max_order: int
    first_divergence: int | None = None
    nc_components: int | None = None
    matched_components: int | None = None
    per_order: tuple[str, ...] = ()


def _inside_linear(p: Polynomial, zeros: set[str]) -> bool:
    """``p`` vanishes on the linear space cut out by the named coordinates."""
    values = {name: 0 for name in zeros}
    return p.evaluate(values).is_zero()


def jet_comparison_probe(form: OneForm, t: int, m: int, point: Sequence | None = None) -> JetComparison:
    """Compare ``J_k(F, P)`` with ``J_k(V(x_1...x_t), 0)`` for ``k <= m`` in the given coordinates.

    Jet fibres are compared as zero sets (radical equality): the foliation's
    jet ideal is usually not radical even when its zero set is the oracle's.
    ``matched_components`` counts oracle components lying inside the
    foliation's zero set.
    """
    n = len(form.ctx)
    if not 1 <= t <= n:
        raise UserInputError("need 1 <= t <= n")
    pt = as_point(point) if point is not None else (Fraction(0),) * n
    statuses = []
    for k in range(1, m + 1):
        fol = jet_ideal_foliation(form, k, pt)
        ctx = fol.ctx
        if t >= 2:
            oracle = nc_jet_oracle(t, k)
            comps = [Ideal(ctx, [g.to_context(ctx) for g in c.generators]) for c in oracle.components]
            nc = Ideal(ctx, [g.to_context(ctx) for g in oracle.intersection.generators])
        else:
            gens = [Polynomial.var(ctx, ctx.jet_variable(1, j)) for j in range(1, k + 1)]
            comps = [Ideal(ctx, gens)]
            nc = comps[0]
        if ideal_equal(fol.ideal, nc, "set"):
            statuses.append("equal")
            continue
        # compared as zero sets: the foliation's is larger when it contains the oracle's
        if ideal_contains_scheme(nc, fol.ideal, "set"):
            statuses.append("larger")
            return JetComparison("SchemeStrictlyLarger", k, k, len(comps), len(comps), tuple(statuses))
        matched = 0
        for c in comps:
            zeros = {str(g) for g in c.generators}
            if all(_inside_linear(p, zeros) for p in fol.ideal.generators):
                matched += 1
        statuses.append("other")
        return JetComparison("Other", k, k, len(comps), matched, tuple(statuses))
    return JetComparison("EqualsNCOracle", m, None, None, None, tuple(statuses))


# ---------------------------------------------------------------------------
# dimensional type


def _monomials(n: int, deg: int):
    for d in range(deg + 1):
        for combo in itertools.combinations_with_replacement(range(n), d):
            e = [0] * n
            for i in combo:
                e[i] += 1
            yield tuple(e)


def nullspace(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of ``{v : rows @ v = 0}`` by exact row reduction."""
    mat = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [v * inv for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -mat[i][fc]
        basis.append(v)
    return basis


def matrix_rank(rows: list[list[Fraction]]) -> int:
    if not rows:
        return 0
    ncols = len(rows[0])
    return ncols - len(nullspace(rows, ncols))


def dimensional_type_estimate(form: OneForm, point: Sequence | None = None, deg_bound: int = 3) -> int:
    """``n`` minus the rank at ``P`` of annihilating vector fields of degree ``<= deg_bound``."""
    n = len(form.ctx)
    pt = as_point(point) if point is not None else (Fraction(0),) * n
    local = form.translate(pt)
    monos = list(_monomials(n, deg_bound))
    unknowns = [(k, e) for k in range(n) for e in monos]
    col = {u: c for c, u in enumerate(unknowns)}
    eqs: dict[tuple, dict[int, Fraction]] = {}
    for k, b in enumerate(local.coefficients):
        for be, bc in b.terms.items():
            for e in monos:
                prod = tuple(x + y for x, y in zip(be, e))
                eqs.setdefault(prod, {})
                c = col[(k, e)]
                eqs[prod][c] = eqs[prod].get(c, 0) + bc
    rows = []
    for _, entries in sorted(eqs.items()):
        row = [Fraction(0)] * len(unknowns)
        for c, v in entries.items():
            row[c] = Fraction(v)
        rows.append(row)
    basis = nullspace(rows, len(unknowns)) if rows else [
        [Fraction(int(i == j)) for j in range(len(unknowns))] for i in range(len(unknowns))
    ]
    zero = (0,) * n
    values = [[v[col[(k, zero)]] for k in range(n)] for v in basis]
    return n - matrix_rank(values) if values else n
