"""Input documents: a small polynomial grammar with position-annotated errors.

A document is a list of statements separated by ``;`` or newlines::

    field t^2-2;
    A0 = X2 - X1; A1 = (1+t)*X1 - X2; A2 = -t*X1

``#`` starts a comment. The entry names select the mode.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from . import algebra as alg
from .poly import SparsePoly

MODES = {
    "logarithmic": (("A0", "A1", "A2"), ("X0", "X1", "X2")),
    "holomorphic": (("f0", "f1", "f2"), ("X0", "X1", "X2")),
    "local-corner": (("a1", "a2"), ("x1", "x2")),
    "laurent": (("F1", "F2"), ("u1", "u2")),
}
HOMOGENEOUS = ("logarithmic", "holomorphic")
FIELD_VAR = "t"


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.message = message
        self.line = line
        self.col = col


# ---------------------------------------------------------------------------
# syntax tree


@dataclass(frozen=True)
class Node:
    kind: str  # num | var | add | sub | mul | div | neg | pow
    value: object = None
    args: tuple = ()
    pos: int = 0


TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokens(text: str, offset: int):
    out = []
    for m in TOKEN.finditer(text):
        if m.group(1):
            out.append(("num", m.group(1), offset + m.start(1)))
        elif m.group(2):
            out.append(("name", m.group(2), offset + m.start(2)))
        elif m.group(3):
            out.append(("op", m.group(3), offset + m.start(3)))
    out.append(("end", "", offset + len(text)))
    return out


class _Parser:
    def __init__(self, source: str, text: str, offset: int):
        self.source = source
        self.toks = _tokens(text, offset)
        self.i = 0

    def error(self, msg, pos):
        line, col = position(self.source, pos)
        raise ParseError(msg, line, col)

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect_end(self):
        t = self.peek()
        if t[0] != "end":
            self.error(f"unexpected {t[1]!r}", t[2])

    def expr(self) -> Node:
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":
            self.take()
            node = self.term()
            if t[1] == "-":
                node = Node("neg", args=(node,), pos=t[2])
        else:
            node = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()
            node = Node("add" if op[1] == "+" else "sub", args=(node, self.term()), pos=op[2])
        return node

    def term(self) -> Node:
        node = self.power()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.take()
            node = Node("mul" if op[1] == "*" else "div", args=(node, self.power()), pos=op[2])
        return node

    def power(self) -> Node:
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            op = self.take()
            sign = 1
            if self.peek()[0] == "op" and self.peek()[1] == "-":
                self.take()
                sign = -1
            t = self.take()
            if t[0] != "num":
                self.error("exponent must be an integer", t[2])
            return Node("pow", sign * int(t[1]), (base,), op[2])
        return base

    def atom(self) -> Node:
        t = self.take()
        if t[0] == "num":
            return Node("num", int(t[1]), pos=t[2])
        if t[0] == "name":
            return Node("var", t[1], pos=t[2])
        if t[0] == "op" and t[1] == "(":
            node = self.expr()
            close = self.take()
            if close[1] != ")":
                self.error("expected ')'", close[2])
            return node
        if t[0] == "op" and t[1] == "-":
            return Node("neg", args=(self.power(),), pos=t[2])
        self.error("unexpected end of input" if t[0] == "end" else f"unexpected {t[1]!r}", t[2])


def position(text: str, pos: int) -> tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


# ---------------------------------------------------------------------------
# evaluation


def _evaluate(node: Node, names: tuple, ctx, source: str):
    """Evaluate to a ``SparsePoly`` over ``names``; ``t`` is the field generator."""
    arity = len(names)

    def fail(msg, pos):
        line, col = position(source, pos)
        raise ParseError(msg, line, col)

    def ev(n: Node) -> SparsePoly:
        if n.kind == "num":
            return SparsePoly.const(arity, Fraction(n.value))
        if n.kind == "var":
            if n.value in names:
                return SparsePoly.var(arity, names.index(n.value))
            if n.value == FIELD_VAR and ctx is not None:
                return SparsePoly.const(arity, ctx.gen)
            fail(f"unknown variable {n.value!r}", n.pos)
        if n.kind == "neg":
            return -ev(n.args[0])
        if n.kind in ("add", "sub", "mul"):
            a, b = ev(n.args[0]), ev(n.args[1])
            return a + b if n.kind == "add" else a - b if n.kind == "sub" else a * b
        if n.kind == "div":
            a, b = ev(n.args[0]), ev(n.args[1])
            if not b.is_constant() or not b:
                fail("can only divide by a nonzero constant", n.pos)
            return a.scale(1 / b.constant_term())
        if n.kind == "pow":
            base = ev(n.args[0])
            k = n.value
            if k >= 0:
                return base**k
            if len(base.terms) != 1 or list(base.terms.values())[0] != 1:
                fail("negative exponents need a bare monomial", n.pos)
            ((e, c),) = base.terms.items()
            return SparsePoly(arity, {tuple(k * v for v in e): c})
        raise AssertionError(n.kind)

    return ev(node)


@dataclass
class InputDocument:
    mode: str
    entries: dict
    field_modulus: tuple | None = None
    context: object = None
    positions: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def variables(self) -> tuple:
        return MODES[self.mode][1]

    def render(self) -> str:
        lines = []
        if self.field_modulus is not None:
            lines.append(f"field {alg.ustr(self.field_modulus, FIELD_VAR)};")
        for k in MODES[self.mode][0]:
            lines.append(f"{k} = {self.entries[k].to_str(self.variables, FIELD_VAR)};")
        return "\n".join(lines) + "\n"

    def echo(self) -> dict:
        out = {"mode": self.mode}
        if self.field_modulus is not None:
            out["field"] = alg.ustr(self.field_modulus, FIELD_VAR)
        out.update({k: self.entries[k].to_str(self.variables, FIELD_VAR) for k in MODES[self.mode][0]})
        return out


def _statements(text: str):
    """Yield ``(body, offset)`` for each statement, comments removed."""
    for m in re.finditer(r"[^;\n]*", text):
        body = m.group(0)
        if "#" in body:
            body = body[: body.index("#")]
        if body.strip():
            yield body, m.start()


def parse_input(text: str) -> InputDocument:
    stmts = list(_statements(text))
    modulus, ctx = None, None
    raw = {}
    for body, off in stmts:
        stripped = body.lstrip()
        lead = off + len(body) - len(stripped)
        m = re.match(r"field\b", stripped)
        if m:
            if modulus is not None:
                raise ParseError("field given twice", *position(text, lead))
            p = _Parser(text, stripped[m.end():], lead + m.end())
            node = p.expr()
            p.expect_end()
            poly = _evaluate(node, (FIELD_VAR,), None, text)
            dense = poly.to_dense()
            if len(dense) < 2 or any(v < 0 for e in poly.terms for v in e):
                raise ParseError("field modulus must be a polynomial of degree at least 1 in t", *position(text, lead))
            if len(alg.usquarefree(dense)) != len(dense):
                raise ParseError("field modulus must be squarefree", *position(text, lead))
            modulus = tuple(alg.umonic(dense))
            ctx = alg.AlgebraicContext(list(modulus))
            continue
        m = re.match(r"([A-Za-z_][A-Za-z_0-9]*)\s*=", stripped)
        if not m:
            raise ParseError("expected 'name = expression' or 'field ...'", *position(text, lead))
        name = m.group(1)
        if name in raw:
            raise ParseError(f"{name} given twice", *position(text, lead))
        raw[name] = (stripped[m.end():], lead + m.end(), lead)
    if not raw:
        raise ParseError("no entries", 1, 1)
    first = next(iter(raw))
    mode = next((md for md, (keys, _) in MODES.items() if first in keys), None)
    if mode is None:
        raise ParseError(f"unknown entry {first!r}", *position(text, raw[first][2]))
    keys, names = MODES[mode]
    for k, (_, _, lead) in raw.items():
        if k not in keys:
            raise ParseError(f"entry {k!r} does not belong to {mode} mode", *position(text, lead))
    missing = [k for k in keys if k not in raw]
    if missing:
        raise ParseError(f"missing {', '.join(missing)}", *position(text, len(text)))
    entries, positions = {}, {}
    for k in keys:
        src, off, lead = raw[k]
        p = _Parser(text, src, off)
        node = p.expr()
        p.expect_end()
        poly = _evaluate(node, names, ctx, text)
        if ctx is not None:
            poly = poly.to_context(ctx)
        if mode in HOMOGENEOUS and poly and not poly.is_homogeneous():
            raise ParseError(f"{k} is not homogeneous", *position(text, off))
        if mode != "laurent" and poly.is_laurent():
            raise ParseError(f"{k} has negative exponents", *position(text, off))
        entries[k] = poly
        positions[k] = position(text, lead)
    return InputDocument(mode, entries, modulus, ctx, positions)
