"""Jet ideals of affine schemes and of 1-form foliations.

An m-jet is the truncated arc ``x_i = sum_j a_ij t^j`` (mod ``t^(m+1)``).
Substituting it into a generator and collecting powers of ``t`` gives the
polynomial constraints on the coordinates ``a_ij``.  For a 1-form the arc
also pulls back ``dx_i`` to ``x_i'(t) dt``, and since ``t^m dt = 0`` only the
coefficients of ``t^0 .. t^(m-1)`` are kept.

Fibres over a rational point fix ``a_i0 = P_i`` and drop those variables.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Sequence

from .algebra import Point, Polynomial, VarContext, as_point, compose
from .errors import DimensionMismatchError, UserInputError
from .groebner import Ideal, intersect_all

Series = list  # list[Polynomial], index = power of t


@dataclass(frozen=True)
class JetContext:
    """Coordinates ``a_ij`` for ``1 <= i <= n`` and ``start <= j <= m``.

    ``start`` is 0 for the full jet space and 1 for a fibre.
    """

    n: int
    m: int
    start: int = 0

    @cached_property
    def ctx(self) -> VarContext:
        return VarContext.jets([(i, j) for i in range(1, self.n + 1) for j in range(self.start, self.m + 1)])

    def var(self, i: int, j: int) -> Polynomial:
        return Polynomial.var(self.ctx, self.ctx.jet_variable(i, j))

    def truncate(self, p: int) -> "JetContext":
        return JetContext(self.n, p, self.start)

    def series(self, point: Sequence | None = None) -> list[Series]:
        """The generic arc, one truncated series per base coordinate."""
        out = []
        for i in range(1, self.n + 1):
            s = []
            for j in range(self.m + 1):
                if j < self.start:
                    c = point[i - 1] if point is not None else 0
                    s.append(Polynomial.const(self.ctx, c))
                else:
                    s.append(self.var(i, j))
            out.append(s)
        return out


def series_mul(a: Series, b: Series, m: int) -> Series:
    ctx = a[0].ctx
    out = [Polynomial.zero(ctx) for _ in range(m + 1)]
    for i, ai in enumerate(a[: m + 1]):
        if not ai:
            continue
        for j in range(0, m + 1 - i):
            if j < len(b) and b[j]:
                out[i + j] = out[i + j] + ai * b[j]
    return out


def series_compose(f: Polynomial, arc: Sequence[Series], m: int) -> Series:
    """Coefficients of ``f(arc(t))`` up to ``t^m``."""
    if len(arc) != len(f.ctx):
        raise DimensionMismatchError(f"arc has {len(arc)} components, polynomial has {len(f.ctx)} variables")
    ctx = arc[0][0].ctx if arc else f.ctx
    cache: dict[tuple[int, int], Series] = {}

    def power(k: int, e: int) -> Series:
        if e == 1:
            return arc[k]
        if (k, e) not in cache:
            half = power(k, e // 2)
            sq = series_mul(half, half, m)
            cache[(k, e)] = series_mul(sq, arc[k], m) if e % 2 else sq
        return cache[(k, e)]

    acc = [Polynomial.zero(ctx) for _ in range(m + 1)]
    for exps, c in f.sorted_terms():
        term = [Polynomial.const(ctx, c)] + [Polynomial.zero(ctx)] * m
        for k, e in enumerate(exps):
            if e:
                term = series_mul(term, power(k, e), m)
        acc = [x + y for x, y in zip(acc, term)]
    return acc


def series_derivative(s: Series) -> Series:
    """d/dt of a truncated series; the result has one fewer coefficient."""
    return [s[j] * j for j in range(1, len(s))]


@dataclass(frozen=True)
class JetIdeal:
    """Constraints on jet coordinates, each tagged by its power of ``t``."""

    jets: JetContext
    kind: str  # "scheme" or "foliation"
    coefficients: tuple[tuple[int, Polynomial], ...]
    point: Point | None = None
    base_names: tuple[str, ...] = field(default=())

    @property
    def ctx(self) -> VarContext:
        return self.jets.ctx

    @property
    def order(self) -> int:
        return self.jets.m

    @cached_property
    def ideal(self) -> Ideal:
        return Ideal(self.ctx, [p for _, p in self.coefficients])

    @property
    def generators(self) -> tuple[Polynomial, ...]:
        return self.ideal.generators

    def by_power(self) -> dict[int, list[Polynomial]]:
        out: dict[int, list[Polynomial]] = {}
        for k, p in self.coefficients:
            out.setdefault(k, []).append(p)
        return out


def _arc(jets: JetContext, point):
    if point is None:
        return jets.series()
    return jets.series(as_point(point))


def _check_point(n: int, point):
    if point is not None and len(point) != n:
        raise DimensionMismatchError(f"point has {len(point)} coordinates, expected {n}")


def jet_ideal_scheme(ideal: Ideal, m: int, point: Sequence | None = None) -> JetIdeal:
    """Jets of ``V(ideal)``; with ``point`` the fibre above it is built directly."""
    if m < 0:
        raise UserInputError("jet order must be nonnegative")
    n = len(ideal.ctx)
    _check_point(n, point)
    jets = JetContext(n, m, 0 if point is None else 1)
    arc = _arc(jets, point)
    coeffs = []
    for g in ideal.generators:
        for k, c in enumerate(series_compose(g, arc, m)):
            coeffs.append((k, c))
    return JetIdeal(jets, "scheme", tuple(coeffs), None if point is None else as_point(point), ideal.ctx.names)


def jet_ideal_foliation(form, m: int, point: Sequence | None = None) -> JetIdeal:
    """Jets of the foliation of ``form``: coefficients of ``t^0 .. t^(m-1)``."""
    if m < 0:
        raise UserInputError("jet order must be nonnegative")
    n = len(form.ctx)
    _check_point(n, point)
    jets = JetContext(n, m, 0 if point is None else 1)
    arc = _arc(jets, point)
    total = [Polynomial.zero(jets.ctx) for _ in range(m)]
    for b, s in zip(form.coefficients, arc):
        if not b or m == 0:
            continue
        pulled = series_compose(b, arc, m - 1)
        total = [x + y for x, y in zip(total, series_mul(pulled, series_derivative(s), m - 1))]
    coeffs = tuple((k, c) for k, c in enumerate(total))
    return JetIdeal(jets, "foliation", coeffs, None if point is None else as_point(point), form.ctx.names)


def jet_fiber(jet: JetIdeal, point: Sequence) -> JetIdeal:
    """Fix ``a_i0 = P_i`` in a full jet ideal and drop those coordinates."""
    if jet.point is not None:
        raise UserInputError("jet ideal is already a fibre")
    pt = as_point(point)
    _check_point(jet.jets.n, pt)
    fib = JetContext(jet.jets.n, jet.jets.m, 1)
    values = {jet.ctx.jet_variable(i, 0): pt[i - 1] for i in range(1, jet.jets.n + 1)}
    coeffs = tuple((k, p.evaluate(values).to_context(fib.ctx)) for k, p in jet.coefficients)
    return JetIdeal(fib, jet.kind, coeffs, pt, jet.base_names)


def jet_truncate(jet: JetIdeal, p: int) -> JetIdeal:
    """Image under the projection to order ``p`` jets."""
    if p >= jet.order or p < 0:
        raise UserInputError(f"truncation order must lie in [0, {jet.order})")
    limit = p if jet.kind == "scheme" else p - 1
    low = jet.jets.truncate(p)
    coeffs = tuple((k, c.to_context(low.ctx)) for k, c in jet.coefficients if k <= limit)
    return JetIdeal(low, jet.kind, coeffs, jet.point, jet.base_names)


def compositions(total: int, parts: int):
    """All tuples of ``parts`` nonnegative integers summing to ``total``."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


@dataclass(frozen=True)
class NCOracle:
    jets: JetContext
    parts: tuple[tuple[int, ...], ...]
    components: tuple[Ideal, ...]
    intersection: Ideal


def nc_jet_oracle(n: int, m: int) -> NCOracle:
    """Linear components of the jets of ``V(x_1 ... x_n)`` above the origin.

    One component per composition ``j_1 + ... + j_n = m - n + 1``, cut out by
    ``a_i1 = ... = a_{i j_i} = 0``.  Below order ``n`` the fibre is the whole
    space and the single component carries no constraints.
    """
    if n < 2:
        raise UserInputError("the normal-crossings oracle needs n >= 2")
    jets = JetContext(n, m, 1)
    if m < n:
        zero = Ideal(jets.ctx, [])
        return NCOracle(jets, (), (zero,), zero)
    parts = tuple(compositions(m - n + 1, n))
    comps = []
    for js in parts:
        gens = [jets.var(i, j) for i, ji in enumerate(js, start=1) for j in range(1, ji + 1)]
        comps.append(Ideal(jets.ctx, gens))
    return NCOracle(jets, parts, tuple(comps), intersect_all(comps))


@dataclass(frozen=True)
class JetMap:
    """Substitution taking target jet coordinates to source jet polynomials."""

    source: JetContext
    target: JetContext
    images: tuple[Polynomial, ...]  # one per target variable, in target order

    def pullback(self, jet: JetIdeal) -> JetIdeal:
        if jet.jets != self.target:
            raise UserInputError("jet ideal does not live on the target of the map")
        coeffs = tuple((k, compose(p, self.images)) for k, p in jet.coefficients)
        return JetIdeal(self.source, jet.kind, coeffs, None, ())

    def as_dict(self) -> dict[str, Polynomial]:
        return dict(zip(self.target.ctx.names, self.images))


def induced_jet_map(phi: Sequence[Polynomial], m: int) -> JetMap:
    """Jet map ``tau -> phi o tau`` of the polynomial map with components ``phi``."""
    phi = list(phi)
    if not phi:
        raise UserInputError("empty map")
    src_n = len(phi[0].ctx)
    source = JetContext(src_n, m, 0)
    target = JetContext(len(phi), m, 0)
    arc = source.series()
    images = []
    for comp in phi:
        images.extend(series_compose(comp, arc, m))
    return JetMap(source, target, tuple(images))


def pullback_ideal(ideal: Ideal, phi: Sequence[Polynomial]) -> Ideal:
    """``phi^{-1}(V(ideal))``: compose each generator with the map."""
    src = phi[0].ctx
    return Ideal(src, [compose(g, list(phi)) for g in ideal.generators])


def jet_point_satisfies(jet: JetIdeal, values: Mapping[str, object]) -> bool:
    """Whether a concrete rational jet lies on the jet ideal."""
    return all(p.evaluate(values).is_zero() for _, p in jet.coefficients)


def jet_point_from_arcs(arcs: Sequence[Sequence], start: int = 1) -> dict[str, object]:
    """Coordinates ``a_i_j`` of the arc whose i-th series has coefficients ``arcs[i-1]``."""
    out = {}
    for i, coeffs in enumerate(arcs, start=1):
        for j, c in enumerate(coeffs):
            if j >= start:
                out[f"a_{i}_{j}"] = c
    return out


def iter_small_jets(n: int, m: int, bound: int):
    """Integer fibre jets with entries in ``[-bound, bound]``, smallest first."""
    size = n * m
    values = sorted(range(-bound, bound + 1), key=lambda v: (abs(v), v < 0))
    for combo in sorted(itertools.product(values, repeat=size), key=lambda c: (max(map(abs, c)), sum(map(abs, c)))):
        yield combo
