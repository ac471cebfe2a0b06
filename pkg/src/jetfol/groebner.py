"""Groebner bases and the ideal-theoretic decisions built on them.

Buchberger's algorithm with the Gebauer-Moeller pair criteria and the
normal selection strategy.  Output bases are reduced and monic, sorted by
descending leading monomial, so two ideals are equal exactly when their
bases compare equal.
"""

from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .algebra import (
    AUX,
    GREVLEX,
    BlockOrder,
    MonomialOrder,
    Polynomial,
    VarContext,
    divides,
    mono_div,
    mono_lcm,
    mono_mul,
)
from .errors import ContextMismatchError, ResourceLimitError, UnknownVariableError

DEFAULT_BUDGET = 200_000

_budget: contextvars.ContextVar[int] = contextvars.ContextVar("groebner_budget", default=DEFAULT_BUDGET)


@contextlib.contextmanager
def step_budget(limit: int):
    """Cap the number of S-pair reductions per basis computation."""
    token = _budget.set(limit)
    try:
        yield
    finally:
        _budget.reset(token)


def current_budget() -> int:
    return _budget.get()


@dataclass(frozen=True)
class Ideal:
    ctx: VarContext
    generators: tuple[Polynomial, ...]

    def __init__(self, ctx: VarContext, generators: Iterable[Polynomial] = ()):
        gens = []
        for g in generators:
            if g.ctx.names != ctx.names:
                raise ContextMismatchError(f"generator in {g.ctx.names}, ideal in {ctx.names}")
            if g and g not in gens:
                gens.append(g)
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "generators", tuple(gens))

    def __add__(self, other: "Ideal") -> "Ideal":
        if other.ctx.names != self.ctx.names:
            raise ContextMismatchError("ideals live in different contexts")
        return Ideal(self.ctx, self.generators + other.generators)

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def is_zero(self) -> bool:
        return not self.generators

    def to_context(self, ctx: VarContext) -> "Ideal":
        return Ideal(ctx, [g.to_context(ctx) for g in self.generators])

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.generators) + ")"


@dataclass(frozen=True)
class GroebnerBasis:
    ctx: VarContext
    order: MonomialOrder
    basis: tuple[Polynomial, ...]

    def reduce(self, f: Polynomial) -> Polynomial:
        """Normal form of ``f`` modulo the basis."""
        if f.ctx.names != self.ctx.names:
            raise ContextMismatchError("polynomial and basis live in different contexts")
        lms = [(g.leading_term(self.order)[0], _terms(g)) for g in self.basis]
        return Polynomial(self.ctx, _normal_form(dict(f.terms), lms, self.order.key), _trusted=True)

    def contains(self, f: Polynomial) -> bool:
        return self.reduce(f).is_zero()

    def is_unit(self) -> bool:
        return len(self.basis) == 1 and self.basis[0].is_constant()

    @property
    def ideal(self) -> Ideal:
        return Ideal(self.ctx, self.basis)

    def __iter__(self):
        return iter(self.basis)

    def __len__(self):
        return len(self.basis)


def _terms(p: Polynomial) -> dict:
    return dict(p.terms)


def _normal_form(f: dict, basis: Sequence[tuple[tuple, dict]], key) -> dict:
    """Full reduction of the term dict ``f``; ``basis`` holds monic (lm, terms)."""
    rem: dict = {}
    while f:
        m = max(f, key=key)
        c = f.pop(m)
        for lm, g in basis:
            if divides(lm, m):
                q = mono_div(m, lm)
                for ge, gc in g.items():
                    if ge == lm:
                        continue
                    te = mono_mul(q, ge)
                    s = f.get(te, 0) - c * gc
                    if s:
                        f[te] = s
                    else:
                        f.pop(te, None)
                break
        else:
            rem[m] = c
    return rem


def _monic(p: dict, key) -> tuple[tuple, dict]:
    lm = max(p, key=key)
    c = p[lm]
    if c != 1:
        inv = 1 / c
        p = {e: v * inv for e, v in p.items()}
    return lm, p


def _spoly(f: tuple, g: tuple) -> dict:
    lf, tf = f
    lg, tg = g
    lcm = mono_lcm(lf, lg)
    uf, ug = mono_div(lcm, lf), mono_div(lcm, lg)
    out = {}
    for e, c in tf.items():
        if e != lf:
            out[mono_mul(uf, e)] = c
    for e, c in tg.items():
        if e == lg:
            continue
        te = mono_mul(ug, e)
        s = out.get(te, 0) - c
        if s:
            out[te] = s
        else:
            out.pop(te, None)
    return out


def _disjoint(a: tuple, b: tuple) -> bool:
    return all(not (x and y) for x, y in zip(a, b))


def _compute(ctx_names: tuple, gens: tuple, order: MonomialOrder, budget: int) -> list[dict]:
    key = order.key
    polys: list[tuple[tuple, dict]] = []
    active: list[int] = []
    pairs: list[tuple[int, int, tuple]] = []

    def update(h: int):
        nonlocal active, pairs
        lh = polys[h][0]
        cand = [(g, mono_lcm(lh, polys[g][0])) for g in active]
        kept = []
        while cand:
            g, l = cand.pop(0)
            if _disjoint(lh, polys[g][0]) or not any(divides(l2, l) for _, l2 in cand + kept):
                kept.append((g, l))
        new_pairs = [(g, h, l) for g, l in kept if not _disjoint(lh, polys[g][0])]
        survivors = []
        for i, j, l in pairs:
            if divides(lh, l) and mono_lcm(polys[i][0], lh) != l and mono_lcm(polys[j][0], lh) != l:
                continue
            survivors.append((i, j, l))
        pairs = survivors + new_pairs
        active = [g for g in active if not divides(lh, polys[g][0])] + [h]

    for g in gens:
        if not g:
            continue
        basis = [polys[i] for i in active]
        r = _normal_form(dict(g), basis, key)
        if not r:
            continue
        polys.append(_monic(r, key))
        update(len(polys) - 1)

    steps = 0
    while pairs:
        best = min(range(len(pairs)), key=lambda k: (sum(pairs[k][2]), pairs[k][0], pairs[k][1]))
        i, j, _ = pairs.pop(best)
        steps += 1
        if steps > budget:
            raise ResourceLimitError(f"Groebner basis exceeded the budget of {budget} S-pair reductions")
        s = _spoly(polys[i], polys[j])
        if not s:
            continue
        r = _normal_form(s, [polys[k] for k in active], key)
        if r:
            polys.append(_monic(r, key))
            update(len(polys) - 1)

    # minimal basis, then inter-reduce
    lead = [polys[k] for k in active]
    minimal = []
    for k, (lm, t) in enumerate(lead):
        if any(divides(lm2, lm) and (lm2 != lm or k2 < k) for k2, (lm2, _) in enumerate(lead) if k2 != k):
            continue
        minimal.append((lm, t))
    reduced = []
    for k, (lm, t) in enumerate(minimal):
        others = [p for k2, p in enumerate(minimal) if k2 != k]
        tail = dict(t)
        tail.pop(lm)
        r = _normal_form(tail, others, key)
        r[lm] = Fraction(1)
        reduced.append((lm, r))
    reduced.sort(key=lambda p: key(p[0]), reverse=True)
    return [r for _, r in reduced]


@lru_cache(maxsize=512)
def _cached(ctx: VarContext, gens: tuple, order: MonomialOrder, budget: int) -> GroebnerBasis:
    raw = _compute(ctx.names, tuple(dict(g.terms) for g in gens), order, budget)
    return GroebnerBasis(ctx, order, tuple(Polynomial(ctx, t, _trusted=True) for t in raw))


def buchberger(ideal: Ideal, order: MonomialOrder = GREVLEX) -> GroebnerBasis:
    """Reduced Groebner basis of ``ideal``; deterministic for a given input."""
    return _cached(ideal.ctx, ideal.generators, order, current_budget())


def groebner(ideal: Ideal, order: MonomialOrder = GREVLEX) -> GroebnerBasis:
    return buchberger(ideal, order)


def ideal_member(f: Polynomial, ideal: Ideal) -> bool:
    if f.ctx.names != ideal.ctx.names:
        raise ContextMismatchError("polynomial and ideal live in different contexts")
    if f.is_zero():
        return True
    return buchberger(ideal).contains(f)


def _with_aux(ctx: VarContext, stem: str) -> tuple[VarContext, str]:
    name = ctx.fresh_name(stem)
    return ctx.extend([name], AUX), name


def radical_member(f: Polynomial, ideal: Ideal) -> bool:
    """Rabinowitsch test: ``f`` lies in the radical iff ``1 in I + (1 - y f)``."""
    if f.ctx.names != ideal.ctx.names:
        raise ContextMismatchError("polynomial and ideal live in different contexts")
    if f.is_zero():
        return True
    if ideal_member(f, ideal):
        return True
    big, y = _with_aux(ideal.ctx, "_y")
    yv = Polynomial.var(big, y)
    gens = [g.to_context(big) for g in ideal.generators]
    gens.append(1 - yv * f.to_context(big))
    return buchberger(Ideal(big, gens)).is_unit()


def _sub_context(ctx: VarContext, drop: set[int]) -> VarContext:
    keep = [k for k in range(len(ctx)) if k not in drop]
    return VarContext(
        tuple(ctx.names[k] for k in keep),
        tuple(ctx.roles[k] for k in keep),
        tuple(ctx.jet_indices[k] for k in keep),
    )


def eliminate(ideal: Ideal, variables: Iterable[int | str]) -> Ideal:
    """Generators of the intersection of ``ideal`` with the subring free of ``variables``.

    The result lives in the context with those variables removed.
    """
    drop = {ideal.ctx.resolve(v) for v in variables}
    if not drop:
        return Ideal(ideal.ctx, buchberger(ideal).basis)
    gb = buchberger(ideal, BlockOrder(drop, len(ideal.ctx)))
    sub = _sub_context(ideal.ctx, drop)
    kept = [g for g in gb.basis if not (g.support() & drop)]
    return Ideal(sub, [g.to_context(sub) for g in kept])


def _is_monomial_ideal(ideal: Ideal) -> bool:
    return all(len(g) == 1 for g in ideal.generators)


def _monomial_intersection(i1: Ideal, i2: Ideal) -> Ideal:
    lcms = set()
    for f in i1.generators:
        for g in i2.generators:
            lcms.add(mono_lcm(next(iter(f.terms)), next(iter(g.terms))))
    minimal = sorted(m for m in lcms if not any(o != m and divides(o, m) for o in lcms))
    return Ideal(i1.ctx, [Polynomial(i1.ctx, {m: Fraction(1)}, _trusted=True) for m in minimal])


def ideal_intersection(i1: Ideal, i2: Ideal, method: str = "auto") -> Ideal:
    """Generators of ``I1 ∩ I2``.

    The general route eliminates ``t`` from ``t*I1 + (1-t)*I2``; two
    monomial ideals are intersected directly through pairwise lcms unless
    ``method="elimination"``.
    """
    if i1.ctx.names != i2.ctx.names:
        raise ContextMismatchError("ideals live in different contexts")
    if i1.is_zero() or i2.is_zero():
        return Ideal(i1.ctx, [])
    if method == "auto" and _is_monomial_ideal(i1) and _is_monomial_ideal(i2):
        return _monomial_intersection(i1, i2)
    big, t = _with_aux(i1.ctx, "_t")
    tv = Polynomial.var(big, t)
    gens = [tv * g.to_context(big) for g in i1.generators]
    gens += [(1 - tv) * g.to_context(big) for g in i2.generators]
    out = eliminate(Ideal(big, gens), [t])
    return out.to_context(i1.ctx)


def intersect_all(ideals: Sequence[Ideal], method: str = "auto") -> Ideal:
    if not ideals:
        raise ValueError("empty intersection")
    acc = ideals[0]
    for other in ideals[1:]:
        acc = ideal_intersection(acc, other, method)
    return Ideal(acc.ctx, buchberger(acc).basis)


def saturate_ideal(ideal: Ideal, f: Polynomial) -> Ideal:
    """``I : f^infinity`` by eliminating ``y`` from ``I + (1 - y f)``."""
    if f.is_zero():
        raise ValueError("cannot saturate by the zero polynomial")
    if f.is_constant() or ideal.is_zero():
        return Ideal(ideal.ctx, buchberger(ideal).basis)
    big, y = _with_aux(ideal.ctx, "_y")
    yv = Polynomial.var(big, y)
    gens = [g.to_context(big) for g in ideal.generators]
    gens.append(1 - yv * f.to_context(big))
    return eliminate(Ideal(big, gens), [y]).to_context(ideal.ctx)


def ideal_contains_scheme(i1: Ideal, i2: Ideal, mode: str = "scheme") -> bool:
    """True iff V(i1) lies inside V(i2): every generator of i2 is in i1 (or its radical)."""
    if i1.ctx.names != i2.ctx.names:
        raise ContextMismatchError("ideals live in different contexts")
    test = radical_member if mode == "set" else ideal_member
    if mode not in ("scheme", "set"):
        raise ValueError(f"unknown containment mode {mode!r}")
    return all(test(g, i1) for g in i2.generators)


def ideal_equal(i1: Ideal, i2: Ideal, mode: str = "scheme") -> bool:
    if mode == "scheme":
        if i1.ctx.names != i2.ctx.names:
            raise ContextMismatchError("ideals live in different contexts")
        return buchberger(i1).basis == buchberger(i2).basis
    return ideal_contains_scheme(i1, i2, "set") and ideal_contains_scheme(i2, i1, "set")


def is_unit_ideal(ideal: Ideal) -> bool:
    return buchberger(ideal).is_unit()


def check_variables(ctx: VarContext, names: Iterable[str]):
    for n in names:
        if n not in ctx:
            raise UnknownVariableError(f"unknown variable {n!r}")
