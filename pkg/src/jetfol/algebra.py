"""Exact sparse multivariate polynomials over the rationals.

Polynomials live in a :class:`VarContext`, an ordered tuple of variable
names.  Terms are stored as a dict mapping dense exponent tuples to
:class:`fractions.Fraction` coefficients; zero coefficients are never stored,
so structural equality of the dicts is equality of polynomials.

Every value is immutable once built.  All arithmetic is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping, Sequence

from .errors import (
    ContextMismatchError,
    DimensionMismatchError,
    NotDivisibleError,
    UnknownVariableError,
)

Exponents = tuple[int, ...]
Point = tuple[Fraction, ...]

BASE = "base"
JET = "jet"
AUX = "aux"


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floating-point coefficients are not accepted")
    return Fraction(value)


def as_point(values: Iterable) -> Point:
    return tuple(as_fraction(v) for v in values)


def jet_name(i: int, j: int) -> str:
    """Machine name of the jet coordinate a_{ij} (1-based i, 0-based j)."""
    return f"a_{i}_{j}"


@dataclass(frozen=True)
class VarContext:
    """Ordered variable names with a role per variable.

    ``jet_indices`` holds the ``(i, j)`` pair for jet variables and ``None``
    for the others.
    """

    names: tuple[str, ...]
    roles: tuple[str, ...] = ()
    jet_indices: tuple[tuple[int, int] | None, ...] = ()
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        roles = tuple(self.roles) or (BASE,) * len(names)
        jets = tuple(self.jet_indices) or (None,) * len(names)
        if len(roles) != len(names) or len(jets) != len(names):
            raise ValueError("roles and jet indices must match the names")
        for role, idx in zip(roles, jets):
            if role not in (BASE, JET, AUX):
                raise ValueError(f"unknown role {role!r}")
            if (role == JET) != (idx is not None):
                raise ValueError("jet variables, and only they, carry (i, j) indices")
        object.__setattr__(self, "roles", roles)
        object.__setattr__(self, "jet_indices", jets)
        object.__setattr__(self, "_index", {n: k for k, n in enumerate(names)})

    @classmethod
    def of(cls, *names: str) -> "VarContext":
        if len(names) == 1 and not isinstance(names[0], str):
            names = tuple(names[0])
        return cls(tuple(names))

    @classmethod
    def jets(cls, pairs: Sequence[tuple[int, int]]) -> "VarContext":
        pairs = tuple(pairs)
        return cls(tuple(jet_name(i, j) for i, j in pairs), (JET,) * len(pairs), pairs)

    def __len__(self) -> int:
        return len(self.names)

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariableError(f"unknown variable {name!r}") from None

    def resolve(self, var: int | str) -> int:
        if isinstance(var, str):
            return self.index(var)
        if not 0 <= var < len(self.names):
            raise UnknownVariableError(f"variable index {var} out of range")
        return var

    @property
    def base_indices(self) -> tuple[int, ...]:
        return tuple(k for k, r in enumerate(self.roles) if r == BASE)

    def jet_variable(self, i: int, j: int) -> int:
        return self.index(jet_name(i, j))

    def extend(self, names: Sequence[str], role: str = AUX) -> "VarContext":
        return VarContext(
            self.names + tuple(names),
            self.roles + (role,) * len(names),
            self.jet_indices + (None,) * len(names),
        )

    def fresh_name(self, stem: str) -> str:
        if stem not in self:
            return stem
        k = 1
        while f"{stem}{k}" in self:
            k += 1
        return f"{stem}{k}"


# ---------------------------------------------------------------------------
# monomial orders


class MonomialOrder:
    """A total monomial order given by a sort key on exponent tuples."""

    name = "order"

    def key(self, exps: Exponents):
        raise NotImplementedError

    def __eq__(self, other):
        return type(self) is type(other) and self.__dict__ == other.__dict__

    def __hash__(self):
        return hash((type(self).__name__, tuple(sorted(self.__dict__.items()))))

    def __repr__(self):
        return self.name


def _revlex(exps: Exponents):
    return tuple(-e for e in reversed(exps))


class Grevlex(MonomialOrder):
    name = "grevlex"

    def key(self, exps):
        return (sum(exps), _revlex(exps))


class Lex(MonomialOrder):
    name = "lex"

    def key(self, exps):
        return exps


class BlockOrder(MonomialOrder):
    """Elimination order: grevlex on ``first`` beats grevlex on the rest."""

    name = "block"

    def __init__(self, first: Iterable[int], nvars: int):
        self.first = tuple(sorted(set(first)))
        self.rest = tuple(k for k in range(nvars) if k not in self.first)

    def key(self, exps):
        a = tuple(exps[k] for k in self.first)
        b = tuple(exps[k] for k in self.rest)
        return (sum(a), _revlex(a), sum(b), _revlex(b))

    def __hash__(self):
        return hash(("block", self.first, self.rest))


GREVLEX = Grevlex()
LEX = Lex()


def divides(a: Exponents, b: Exponents) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_mul(a: Exponents, b: Exponents) -> Exponents:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Exponents, b: Exponents) -> Exponents:
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Exponents, b: Exponents) -> Exponents:
    return tuple(max(x, y) for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# polynomials


class Polynomial:
    """An exact polynomial in the variables of ``ctx``."""

    __slots__ = ("ctx", "_terms", "_hash")

    def __init__(self, ctx: VarContext, terms: Mapping[Exponents, Fraction] | None = None, *, _trusted=False):
        self.ctx = ctx
        if _trusted:
            self._terms = terms
        else:
            n = len(ctx)
            clean = {}
            for exps, c in (terms or {}).items():
                exps = tuple(exps)
                if len(exps) != n or any(e < 0 for e in exps):
                    raise ValueError(f"bad exponent tuple {exps} for {n} variables")
                c = as_fraction(c)
                if c:
                    clean[exps] = clean.get(exps, 0) + c
            self._terms = {e: c for e, c in clean.items() if c}
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, ctx: VarContext) -> "Polynomial":
        return cls(ctx, {}, _trusted=True)

    @classmethod
    def const(cls, ctx: VarContext, value) -> "Polynomial":
        value = as_fraction(value)
        if not value:
            return cls.zero(ctx)
        return cls(ctx, {(0,) * len(ctx): value}, _trusted=True)

    @classmethod
    def var(cls, ctx: VarContext, name: int | str) -> "Polynomial":
        k = ctx.resolve(name)
        exps = [0] * len(ctx)
        exps[k] = 1
        return cls(ctx, {tuple(exps): Fraction(1)}, _trusted=True)

    @classmethod
    def monomial(cls, ctx: VarContext, exps: Exponents, coeff=1) -> "Polynomial":
        return cls(ctx, {tuple(exps): coeff})

    # -- basic protocol ---------------------------------------------------

    @property
    def terms(self) -> Mapping[Exponents, Fraction]:
        return self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_coefficient(self) -> Fraction:
        return self._terms.get((0,) * len(self.ctx), Fraction(0))

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ctx.names == other.ctx.names and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == Polynomial.const(self.ctx, other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx.names, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        from .printing import format_polynomial

        return format_polynomial(self)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ctx.names != self.ctx.names:
                raise ContextMismatchError(f"context {other.ctx.names} differs from {self.ctx.names}")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.const(self.ctx, other)
        raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial(self.ctx, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ctx, {e: -c for e, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = as_fraction(other)
            if not other:
                return Polynomial.zero(self.ctx)
            return Polynomial(self.ctx, {e: c * other for e, c in self._terms.items()}, _trusted=True)
        other = self._coerce(other)
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial(self.ctx, {e: c for e, c in out.items() if c}, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Polynomial.const(self.ctx, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "Polynomial":
        return self * as_fraction(c)

    def mul_term(self, exps: Exponents, coeff: Fraction) -> "Polynomial":
        return Polynomial(
            self.ctx,
            {tuple(x + y for x, y in zip(e, exps)): c * coeff for e, c in self._terms.items()},
            _trusted=True,
        )

    # -- structure --------------------------------------------------------

    def total_degree(self) -> int:
        """Largest total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def min_degree(self) -> float:
        return min((sum(e) for e in self._terms), default=math.inf)

    def degree_in(self, var: int | str) -> int:
        k = self.ctx.resolve(var)
        return max((e[k] for e in self._terms), default=-1)

    def support(self) -> set[int]:
        """Indices of variables that actually occur."""
        used = set()
        for e in self._terms:
            used.update(k for k, x in enumerate(e) if x)
        return used

    def homogeneous_part(self, d: int) -> "Polynomial":
        return Polynomial(self.ctx, {e: c for e, c in self._terms.items() if sum(e) == d}, _trusted=True)

    def sorted_terms(self, order: MonomialOrder = GREVLEX) -> list[tuple[Exponents, Fraction]]:
        return sorted(self._terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def leading_term(self, order: MonomialOrder = GREVLEX) -> tuple[Exponents, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self._terms, key=order.key)
        return e, self._terms[e]

    def monic(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        if not self._terms:
            return self
        _, c = self.leading_term(order)
        return self * (1 / c)

    def coefficient(self, exps: Exponents) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    # -- calculus and substitution ---------------------------------------

    def diff(self, var: int | str) -> "Polynomial":
        k = self.ctx.resolve(var)
        out = {}
        for e, c in self._terms.items():
            if e[k]:
                ne = list(e)
                ne[k] -= 1
                out[tuple(ne)] = c * e[k]
        return Polynomial(self.ctx, out, _trusted=True)

    def evaluate(self, values: Mapping[int | str, object]) -> "Polynomial":
        """Substitute rational constants for some variables."""
        vals = {self.ctx.resolve(k): as_fraction(v) for k, v in values.items()}
        out: dict = {}
        for e, c in self._terms.items():
            ne = list(e)
            for k, v in vals.items():
                if ne[k]:
                    c = c * v ** ne[k]
                    ne[k] = 0
            if c:
                ne = tuple(ne)
                out[ne] = out.get(ne, 0) + c
        return Polynomial(self.ctx, {e: c for e, c in out.items() if c}, _trusted=True)

    def __call__(self, *point) -> Fraction:
        if len(point) != len(self.ctx):
            raise DimensionMismatchError(f"expected {len(self.ctx)} values, got {len(point)}")
        total = Fraction(0)
        pt = as_point(point)
        for e, c in self._terms.items():
            term = c
            for v, k in zip(pt, e):
                if k:
                    term *= v**k
            total += term
        return total

    def to_context(self, ctx: VarContext) -> "Polynomial":
        """Re-express in ``ctx``, matching variables by name."""
        if ctx.names == self.ctx.names:
            return self if ctx is self.ctx else Polynomial(ctx, self._terms, _trusted=True)
        pos = []
        for k, name in enumerate(self.ctx.names):
            pos.append(ctx.index(name) if name in ctx else None)
        n = len(ctx)
        out = {}
        for e, c in self._terms.items():
            ne = [0] * n
            for k, x in enumerate(e):
                if x:
                    if pos[k] is None:
                        raise ContextMismatchError(f"variable {self.ctx.names[k]!r} missing from target context")
                    ne[pos[k]] = x
            out[tuple(ne)] = c
        return Polynomial(ctx, out, _trusted=True)

    def __reduce__(self):
        return (Polynomial, (self.ctx, dict(self._terms)))


def poly_arith(f: Polynomial, g: Polynomial, op: str) -> Polynomial:
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown operation {op!r}")


def partial_derivative(f: Polynomial, var: int | str) -> Polynomial:
    return f.diff(var)


def substitute(f: Polynomial, sigma: Mapping[int | str, Polynomial], target: VarContext | None = None) -> Polynomial:
    """Compose ``f`` with the map ``sigma``.

    Variables absent from ``sigma`` are fixed, which requires them to exist
    in the target context.  ``target`` defaults to the context of the images.
    """
    images = {f.ctx.resolve(k): v for k, v in sigma.items()}
    if target is None:
        ctxs = {p.ctx.names: p.ctx for p in images.values()}
        if len(ctxs) > 1:
            raise ContextMismatchError("substitution images live in different contexts")
        target = next(iter(ctxs.values())) if ctxs else f.ctx
    full = []
    for k, name in enumerate(f.ctx.names):
        if k in images:
            img = images[k]
            if img.ctx.names != target.names:
                img = img.to_context(target)
            full.append(img)
        else:
            full.append(Polynomial.var(target, name))
    return compose(f, full)


def compose(f: Polynomial, images: Sequence[Polynomial]) -> Polynomial:
    """Substitute ``images[k]`` for variable ``k`` of ``f``."""
    if len(images) != len(f.ctx):
        raise DimensionMismatchError("need one image per variable")
    target = images[0].ctx if images else f.ctx
    powers: list[dict[int, Polynomial]] = [{0: Polynomial.const(target, 1), 1: img} for img in images]

    def power(k, e):
        cache = powers[k]
        if e not in cache:
            half = power(k, e // 2)
            sq = half * half
            cache[e] = sq * images[k] if e % 2 else sq
        return cache[e]

    acc: dict = {}
    for e, c in f.terms.items():
        term = Polynomial.const(target, c)
        for k, x in enumerate(e):
            if x:
                term = term * power(k, x)
        for te, tc in term.terms.items():
            s = acc.get(te, 0) + tc
            if s:
                acc[te] = s
            else:
                acc.pop(te, None)
    return Polynomial(target, acc, _trusted=True)


def translate(f: Polynomial, point: Sequence, variables: Sequence[int | str] | None = None) -> Polynomial:
    """Return ``f(x + P)`` over the base variables (or the given ones)."""
    idx = [f.ctx.resolve(v) for v in variables] if variables is not None else list(f.ctx.base_indices)
    pt = as_point(point)
    if len(pt) != len(idx):
        raise DimensionMismatchError(f"point has {len(pt)} coordinates, expected {len(idx)}")
    if not any(pt):
        return f
    sigma = {k: Polynomial.var(f.ctx, k) + v for k, v in zip(idx, pt) if v}
    return substitute(f, sigma, f.ctx)


def order_at_point(f: Polynomial, point: Sequence | None = None, variables=None) -> float:
    """Vanishing order at ``point``: an int, or ``math.inf`` for zero."""
    if f.is_zero():
        return math.inf
    if point is not None:
        f = translate(f, point, variables)
    return int(f.min_degree())


# ---------------------------------------------------------------------------
# exact division and gcd


def exact_divide(f: Polynomial, g: Polynomial) -> Polynomial:
    """Return ``q`` with ``f == q * g``; raise :class:`NotDivisibleError` otherwise."""
    g = f._coerce(g)
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    lm, lc = g.leading_term(GREVLEX)
    rest = [(e, c) for e, c in g.terms.items() if e != lm]
    rem = dict(f.terms)
    quot: dict = {}
    key = GREVLEX.key
    while rem:
        e = max(rem, key=key)
        if not divides(lm, e):
            raise NotDivisibleError("divisor does not divide the dividend")
        c = rem.pop(e) / lc
        qe = mono_div(e, lm)
        quot[qe] = c
        for ge, gc in rest:
            te = mono_mul(qe, ge)
            s = rem.get(te, 0) - c * gc
            if s:
                rem[te] = s
            else:
                rem.pop(te, None)
    return Polynomial(f.ctx, quot, _trusted=True)


def divides_poly(g: Polynomial, f: Polynomial) -> bool:
    if g.is_zero():
        return f.is_zero()
    try:
        exact_divide(f, g)
    except NotDivisibleError:
        return False
    return True


def _as_univariate(f: Polynomial, k: int) -> dict[int, Polynomial]:
    parts: dict[int, dict] = {}
    for e, c in f.terms.items():
        d = e[k]
        ne = e[:k] + (0,) + e[k + 1 :]
        parts.setdefault(d, {})[ne] = c
    return {d: Polynomial(f.ctx, t, _trusted=True) for d, t in parts.items()}


def _from_univariate(parts: Mapping[int, Polynomial], k: int, ctx: VarContext) -> Polynomial:
    out = {}
    for d, p in parts.items():
        for e, c in p.terms.items():
            out[e[:k] + (d,) + e[k + 1 :]] = c
    return Polynomial(ctx, out, _trusted=True)


def _content(parts: Mapping[int, Polynomial]) -> Polynomial:
    return reduce(multivariate_gcd, parts.values())


def _pseudo_remainder(a: dict[int, Polynomial], b: dict[int, Polynomial]) -> dict[int, Polynomial]:
    db = max(b)
    lb = b[db]
    a = dict(a)
    while a and max(a) >= db:
        da = max(a)
        la = a[da]
        shift = da - db
        new = {d: p * lb for d, p in a.items()}
        for d, p in b.items():
            s = new.get(d + shift)
            s = -(p * la) if s is None else s - p * la
            if s:
                new[d + shift] = s
            else:
                new.pop(d + shift, None)
        a = {d: p for d, p in new.items() if p}
    return a


def multivariate_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Monic (grevlex) greatest common divisor; ``gcd(0, 0) == 0``."""
    g = f._coerce(g)
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    if f.is_constant() or g.is_constant():
        return Polynomial.const(f.ctx, 1)
    used = f.support() | g.support()
    k = max(used)
    fu, gu = _as_univariate(f, k), _as_univariate(g, k)
    if max(fu) == 0:
        return multivariate_gcd(f, _content(gu))
    if max(gu) == 0:
        return multivariate_gcd(_content(fu), g)
    cf, cg = _content(fu), _content(gu)
    c = multivariate_gcd(cf, cg)
    a = {d: exact_divide(p, cf) for d, p in fu.items()}
    b = {d: exact_divide(p, cg) for d, p in gu.items()}
    if max(a) < max(b):
        a, b = b, a
    while True:
        r = _pseudo_remainder(a, b)
        if not r:
            break
        if max(r) == 0:
            b = {0: Polynomial.const(f.ctx, 1)}
            break
        cr = _content(r)
        a, b = b, {d: exact_divide(p, cr) for d, p in r.items()}
    cb = _content(b)
    b = {d: exact_divide(p, cb) for d, p in b.items()}
    return (c * _from_univariate(b, k, f.ctx)).monic()


def gcd_many(polys: Iterable[Polynomial]) -> Polynomial:
    polys = list(polys)
    if not polys:
        raise ValueError("gcd of an empty family")
    return reduce(multivariate_gcd, polys[1:], polys[0].monic())


def lcm(f: Polynomial, g: Polynomial) -> Polynomial:
    if f.is_zero() or g.is_zero():
        return Polynomial.zero(f.ctx)
    return exact_divide(f * g, multivariate_gcd(f, g)).monic()


def valuation(f: Polynomial, var: int | str) -> float:
    """Largest power of a single variable dividing ``f``."""
    k = f.ctx.resolve(var)
    if f.is_zero():
        return math.inf
    return min(e[k] for e in f.terms)
