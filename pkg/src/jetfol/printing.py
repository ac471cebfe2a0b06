"""Canonical text for rationals, polynomials, forms and points."""

from __future__ import annotations

from fractions import Fraction
from typing import TYPE_CHECKING, Sequence

if TYPE_CHECKING:  # pragma: no cover
    from .algebra import Polynomial


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_monomial(names: Sequence[str], exps) -> str:
    parts = []
    for name, e in zip(names, exps):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_polynomial(p: "Polynomial", names: Sequence[str] | None = None) -> str:
    """Terms in descending grevlex order; ``0`` for the zero polynomial."""
    from .algebra import GREVLEX

    names = names or p.ctx.names
    if p.is_zero():
        return "0"
    out = []
    for k, (exps, c) in enumerate(p.sorted_terms(GREVLEX)):
        mono = format_monomial(names, exps)
        neg = c < 0
        mag = -c if neg else c
        if mono:
            body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
        else:
            body = format_rational(mag)
        if k == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


def format_point(point) -> str:
    return "(" + ", ".join(format_rational(v) for v in point) + ")"


def planar_jet_alias(name: str) -> str:
    """Two-variable jet alias: ``a_1_j -> a_j`` and ``a_2_j -> b_j``."""
    parts = name.split("_")
    if len(parts) == 3 and parts[0] == "a" and parts[1] in ("1", "2"):
        return ("a" if parts[1] == "1" else "b") + "_" + parts[2]
    return name
