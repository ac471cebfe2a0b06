"""Recursive-descent parser for the input language.

Grammar (whitespace-insensitive, LL(1))::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | '+' unary | power
    power   := atom ('^' INT)?
    atom    := INT | NAME | 'd' '(' NAME ')' | '(' expr ')'
    ideal   := '[' (expr (',' expr)*)? ']'
    point   := '(' (number (',' number)*)? ')'

``d(v)`` denotes the differential of ``v``; an expression containing
differentials must be linear in them and is read as a 1-form.  Division is
only allowed by nonzero constants, which covers ``p/q`` literals.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .algebra import Polynomial, VarContext
from .errors import ParseError, UnknownVariableError, UserInputError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


@dataclass(frozen=True)
class Token:
    kind: str  # INT, NAME, OP, END
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    line, line_start = 1, 0
    while True:
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos and m.group(0) == "":
            break
        start = m.start(m.lastindex) if m.lastindex else m.end()
        for k in range(pos, start):
            if text[k] == "\n":
                line, line_start = line + 1, k + 1
        col = start - line_start + 1
        if m.group(1) is not None:
            tokens.append(Token("INT", m.group(1), line, col))
        elif m.group(2) is not None:
            tokens.append(Token("NAME", m.group(2), line, col))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()[],":
                raise ParseError(f"unexpected character {ch!r}", line, col)
            tokens.append(Token("OP", ch, line, col))
        else:
            break
        pos = m.end()
    for k in range(pos, len(text)):
        if text[k] == "\n":
            line, line_start = line + 1, k + 1
    tokens.append(Token("END", "", line, len(text) - line_start + 1))
    return tokens


# AST nodes are tuples:
#   ("num", Fraction) ("var", name) ("d", name)
#   ("add", a, b) ("sub", a, b) ("mul", a, b) ("div", a, b) ("neg", a) ("pow", a, k)


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.tok
        raise ParseError(msg, tok.line, tok.column)

    def accept(self, text: str) -> bool:
        if self.tok.kind == "OP" and self.tok.text == text:
            self.pos += 1
            return True
        return False

    def expect(self, text: str):
        if not self.accept(text):
            found = self.tok.text or "end of input"
            self.error(f"expected {text!r}, found {found!r}")

    def expect_end(self):
        if self.tok.kind != "END":
            self.error(f"unexpected {self.tok.text!r}")

    def expr(self):
        node = self.term()
        while True:
            if self.accept("+"):
                node = ("add", node, self.term())
            elif self.accept("-"):
                node = ("sub", node, self.term())
            else:
                return node

    def term(self):
        node = self.unary()
        while True:
            if self.accept("*"):
                node = ("mul", node, self.unary())
            elif self.tok.kind == "OP" and self.tok.text == "/":
                tok = self.tok
                self.pos += 1
                node = ("div", node, self.unary(), (tok.line, tok.column))
            else:
                return node

    def unary(self):
        if self.accept("-"):
            return ("neg", self.unary())
        if self.accept("+"):
            return self.unary()
        return self.power()

    def power(self):
        node = self.atom()
        if self.accept("^"):
            if self.tok.kind != "INT":
                self.error("exponent must be a nonnegative integer")
            k = int(self.tok.text)
            self.pos += 1
            node = ("pow", node, k)
        return node

    def atom(self):
        tok = self.tok
        if tok.kind == "INT":
            self.pos += 1
            return ("num", Fraction(int(tok.text)))
        if tok.kind == "NAME":
            self.pos += 1
            if tok.text == "d" and self.tok.kind == "OP" and self.tok.text == "(":
                self.pos += 1
                if self.tok.kind != "NAME":
                    self.error("expected a variable name inside d(...)")
                name = self.tok.text
                self.pos += 1
                self.expect(")")
                return ("d", name)
            return ("var", tok.text)
        if self.accept("("):
            node = self.expr()
            self.expect(")")
            return node
        self.error(f"unexpected {tok.text or 'end of input'!r}")

    def number(self) -> Fraction:
        sign = -1 if self.accept("-") else 1
        if self.tok.kind != "INT":
            self.error("expected a rational number")
        value = Fraction(int(self.tok.text))
        self.pos += 1
        if self.accept("/"):
            if self.tok.kind != "INT" or int(self.tok.text) == 0:
                self.error("expected a nonzero integer denominator")
            value /= int(self.tok.text)
            self.pos += 1
        return sign * value


def _names(node, acc: list, diffs: list):
    kind = node[0]
    if kind == "var":
        if node[1] not in acc:
            acc.append(node[1])
    elif kind == "d":
        if node[1] not in diffs:
            diffs.append(node[1])
        if node[1] not in acc:
            acc.append(node[1])
    elif kind in ("add", "sub", "mul", "div"):
        _names(node[1], acc, diffs)
        _names(node[2], acc, diffs)
    elif kind in ("neg", "pow"):
        _names(node[1], acc, diffs)


def _evaluate(node, ctx: VarContext):
    """Evaluate to ``(poly, form)`` where ``form`` maps variable index -> coefficient."""
    kind = node[0]
    if kind == "num":
        return Polynomial.const(ctx, node[1]), None
    if kind == "var":
        return Polynomial.var(ctx, node[1]), None
    if kind == "d":
        return None, {ctx.index(node[1]): Polynomial.const(ctx, 1)}
    if kind == "neg":
        p, f = _evaluate(node[1], ctx)
        return (-p, None) if f is None else (None, {k: -v for k, v in f.items()})
    if kind in ("add", "sub"):
        p1, f1 = _evaluate(node[1], ctx)
        p2, f2 = _evaluate(node[2], ctx)
        sign = 1 if kind == "add" else -1
        if f1 is None and f2 is None:
            return p1 + p2 * sign, None
        if f1 is None or f2 is None:
            nonzero = p1 if f1 is None else p2
            if nonzero:
                raise UserInputError("cannot add a function to a 1-form")
            f1 = f1 or {}
            f2 = f2 or {}
        out = dict(f1)
        for k, v in f2.items():
            out[k] = out.get(k, Polynomial.zero(ctx)) + v * sign
        return None, out
    if kind == "mul":
        p1, f1 = _evaluate(node[1], ctx)
        p2, f2 = _evaluate(node[2], ctx)
        if f1 is not None and f2 is not None:
            raise UserInputError("product of two differentials is not a 1-form")
        if f1 is None and f2 is None:
            return p1 * p2, None
        p, f = (p1, f2) if f1 is None else (p2, f1)
        return None, {k: p * v for k, v in f.items()}
    if kind == "div":
        p1, f1 = _evaluate(node[1], ctx)
        p2, f2 = _evaluate(node[2], ctx)
        line, col = node[3]
        if f2 is not None or not p2.is_constant() or p2.is_zero():
            raise ParseError("division only by nonzero constants", line, col)
        c = 1 / p2.constant_coefficient()
        return (p1 * c, None) if f1 is None else (None, {k: v * c for k, v in f1.items()})
    if kind == "pow":
        p, f = _evaluate(node[1], ctx)
        if f is not None:
            raise UserInputError("cannot raise a 1-form to a power")
        return p ** node[2], None
    raise AssertionError(kind)


def _ctx_for(nodes, variables, prefer_diffs: bool) -> VarContext:
    names, diffs = [], []
    for node in nodes:
        _names(node, names, diffs)
    if variables is not None:
        ctx = VarContext.of(*variables)
        for name in names:
            if name not in ctx:
                raise UnknownVariableError(f"variable {name!r} not declared")
        return ctx
    lead = diffs if prefer_diffs else []
    rest = sorted(n for n in names if n not in lead)
    return VarContext.of(*(lead + rest))


def parse_ast(text: str):
    p = _Parser(text)
    node = p.expr()
    p.expect_end()
    return node


def parse_polynomial(text: str, ctx: VarContext | None = None, variables=None) -> Polynomial:
    node = parse_ast(text)
    if ctx is None:
        ctx = _ctx_for([node], variables, False)
    poly, form = _evaluate(node, ctx)
    if form is not None:
        raise UserInputError("expected a polynomial, found a 1-form")
    return poly


def parse_form(text: str, ctx: VarContext | None = None, variables=None):
    """Parse a 1-form; returns a :class:`~jetfol.foliation.OneForm`."""
    from .foliation import OneForm

    node = parse_ast(text)
    if ctx is None:
        ctx = _ctx_for([node], variables, True)
    poly, form = _evaluate(node, ctx)
    if form is None:
        if poly.is_zero():
            form = {}
        else:
            raise UserInputError("expected a 1-form, found a polynomial")
    coeffs = [form.get(k, Polynomial.zero(ctx)) for k in range(len(ctx))]
    return OneForm(ctx, tuple(coeffs))


def parse_ideal_asts(text: str) -> list:
    p = _Parser(text)
    p.expect("[")
    nodes = []
    if not p.accept("]"):
        nodes.append(p.expr())
        while p.accept(","):
            nodes.append(p.expr())
        p.expect("]")
    p.expect_end()
    return nodes


def parse_ideal(text: str, ctx: VarContext | None = None, variables=None):
    """Parse ``[f1, f2, ...]``; returns a :class:`~jetfol.groebner.Ideal`."""
    from .groebner import Ideal

    nodes = parse_ideal_asts(text)
    if ctx is None:
        ctx = _ctx_for(nodes, variables, False)
    gens = []
    for node in nodes:
        poly, form = _evaluate(node, ctx)
        if form is not None:
            raise UserInputError("ideal generators must be polynomials")
        gens.append(poly)
    return Ideal(ctx, gens)


def parse_point(text: str) -> tuple[Fraction, ...]:
    p = _Parser(text)
    p.expect("(")
    values = []
    if not p.accept(")"):
        values.append(p.number())
        while p.accept(","):
            values.append(p.number())
        p.expect(")")
    p.expect_end()
    return tuple(values)


def infer_context(form_text: str | None = None, ideal_texts=(), poly_texts=(), variables=None) -> VarContext:
    """One shared context for several inputs; differentials lead the order."""
    if variables is not None:
        return VarContext.of(*variables)
    names, diffs = [], []
    if form_text is not None:
        _names(parse_ast(form_text), names, diffs)
    for t in ideal_texts:
        for node in parse_ideal_asts(t):
            _names(node, names, diffs)
    for t in poly_texts:
        _names(parse_ast(t), names, diffs)
    rest = sorted(n for n in names if n not in diffs)
    return VarContext.of(*(diffs + rest))
