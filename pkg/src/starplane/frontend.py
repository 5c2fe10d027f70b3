"""Expression language for noncommutative words and commutative symbols.

Grammar (ASCII)::

    expr    := term (('+' | '-') term)*
    term    := unary ('*' unary)*
    unary   := '-' unary | power
    power   := primary ['^' exponent]
    primary := atom | rational | '(' expr ')'
             | 'comm(' expr ',' expr ')' | 'star(' expr ',' expr [',' int] ')'
    atom    := 'z' | 'zb' | 'zi' | 'zbi' | 'H' | 'r2' | 'i'
    exponent:= ['-'] int | '(' ['-'] int ['/' int] ')'

Word mode keeps products ordered and admits integer exponents only; symbol
mode admits rational exponents on z and zb and treats products as commuting.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ParseError
from .scalars import ONE, I, GaussianRational, HPolynomial
from .star import Symbol, moyal_star, star_commutator, format_symbol, symbol_sort_key
from .weyl import (NCPoly, DiffOpPoly, Z, ZB, ZI, ZBI, LETTER_NAMES, commutator,
                   format_ncpoly, format_diffop)

MODES = ("word", "symbol")
GENERATORS = ("z", "zb", "zi", "zbi", "H", "r2", "i")
FUNCTIONS = ("comm", "star")
DEFAULT_STAR_ORDER = 4

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^(),]))")


@dataclass(frozen=True)
class Ast:
    """Expression tree node; ``span`` and ``mode`` do not take part in equality."""

    kind: str
    children: tuple = ()
    value: object = None
    span: tuple = field(default=(0, 0), compare=False)
    mode: str | None = field(default=None, compare=False)


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            nxt = len(text[pos:]) - len(text[pos:].lstrip()) + pos
            raise ParseError(f"unexpected character {text[nxt]!r}", nxt)
        kind = m.lastgroup
        start = m.start(kind)
        out.append((kind, m.group(kind), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, mode: str):
        self.text = text
        self.mode = mode
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self, k: int = 0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        tok = self.take()
        if tok[1] != value or tok[0] == "end":
            got = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {value!r}, got {got}", tok[2])
        return tok

    def parse(self) -> Ast:
        node = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2])
        return node

    def expr(self) -> Ast:
        start = self.peek()[2]
        items = [self.term()]
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()
            t = self.term()
            if op[1] == "-":
                t = Ast("negation", (t,), span=(op[2], t.span[1]))
            items.append(t)
        if len(items) == 1:
            return items[0]
        return Ast("sum", tuple(items), span=(start, items[-1].span[1]))

    def term(self) -> Ast:
        start = self.peek()[2]
        items = [self.unary()]
        while self.peek() == ("op", "*", self.peek()[2]):
            self.take()
            items.append(self.unary())
        if len(items) == 1:
            return items[0]
        return Ast("product", tuple(items), span=(start, items[-1].span[1]))

    def unary(self) -> Ast:
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "-":
            self.take()
            inner = self.unary()
            return Ast("negation", (inner,), span=(tok[2], inner.span[1]))
        return self.power()

    def power(self) -> Ast:
        base = self.primary()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            exp, end = self.exponent()
            return Ast("power", (base,), exp, span=(base.span[0], end))
        return base

    def _int(self) -> tuple:
        tok = self.take()
        if tok[0] != "num":
            got = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected an integer, got {got}", tok[2])
        return int(tok[1]), tok

    def exponent(self):
        tok = self.peek()
        sign = 1
        if tok[0] == "op" and tok[1] == "-":
            self.take()
            sign = -1
        tok = self.peek()
        if tok[0] == "num":
            n, t = self._int()
            return Fraction(sign * n), t[2] + len(t[1])
        if tok[0] == "op" and tok[1] == "(":
            self.take()
            if self.peek()[0] == "op" and self.peek()[1] == "-":
                self.take()
                sign = -sign
            n, _ = self._int()
            value = Fraction(n)
            if self.peek()[0] == "op" and self.peek()[1] == "/":
                slash = self.take()
                d, dt = self._int()
                if d == 0:
                    raise ParseError("zero denominator in exponent", dt[2])
                value = Fraction(n, d)
                if value.denominator != 1 and self.mode == "word":
                    raise ParseError("rational exponent is not allowed in word mode", slash[2])
            close = self.expect(")")
            return sign * value, close[2] + 1
        got = "end of input" if tok[0] == "end" else repr(tok[1])
        raise ParseError(f"expected an exponent, got {got}", tok[2])

    def primary(self) -> Ast:
        tok = self.take()
        kind, val, pos = tok
        if kind == "num":
            q = Fraction(int(val))
            end = pos + len(val)
            if self.peek()[0] == "op" and self.peek()[1] == "/" and self.peek(1)[0] == "num":
                self.take()
                d, dt = self._int()
                if d == 0:
                    raise ParseError("zero denominator", dt[2])
                q = Fraction(int(val), d)
                end = dt[2] + len(dt[1])
            return Ast("number", (), GaussianRational(q), span=(pos, end))
        if kind == "name":
            if val in FUNCTIONS and self.peek()[1] == "(":
                return self.call(val, pos)
            if val in GENERATORS:
                return Ast("generator", (), val, span=(pos, pos + len(val)))
            raise ParseError(f"unknown identifier {val!r}", pos)
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "end":
            raise ParseError("unexpected end of input", pos)
        raise ParseError(f"unexpected {val!r}", pos)

    def call(self, name: str, pos: int) -> Ast:
        self.expect("(")
        a = self.expr()
        self.expect(",")
        b = self.expr()
        order = None
        if name == "star" and self.peek()[1] == ",":
            self.take()
            order, _ = self._int()
        close = self.expect(")")
        kind = "commutator-call" if name == "comm" else "star-call"
        return Ast(kind, (a, b), order, span=(pos, close[2] + 1))


def parse(text: str, mode: str = "word") -> Ast:
    """Parse ``text`` in ``word`` or ``symbol`` mode."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if not text or not text.strip():
        raise ParseError("empty expression", 0)
    node = _Parser(text, mode).parse()
    return Ast(node.kind, node.children, node.value, node.span, mode)


# ---------------------------------------------------------------- translation

_LETTER = {"z": Z, "zb": ZB, "zi": ZI, "zbi": ZBI}
_INVERSE = {Z: ZI, ZB: ZBI, ZI: Z, ZBI: ZB}


def _int_exp(node: Ast) -> int:
    e = node.value
    if e.denominator != 1:
        raise ParseError("rational exponent is not allowed in word mode", node.span[0])
    return int(e)


def to_ncpoly(node: Ast) -> NCPoly:
    """Word-mode translation; products stay in order and are not normal-formed."""
    k = node.kind
    if k == "number":
        return NCPoly.scalar(node.value)
    if k == "generator":
        return _gen_word(node.value, 1, node)
    if k == "negation":
        return -to_ncpoly(node.children[0])
    if k == "sum":
        out = NCPoly()
        for c in node.children:
            out = out + to_ncpoly(c)
        return out
    if k == "product":
        out = NCPoly.scalar(ONE)
        for c in node.children:
            out = out * to_ncpoly(c)
        return out
    if k == "power":
        n = _int_exp(node)
        base = node.children[0]
        if base.kind == "generator":
            return _gen_word(base.value, n, node)
        if n < 0:
            raise ParseError("negative power of a compound expression", node.span[0])
        inner = to_ncpoly(base)
        out = NCPoly.scalar(ONE)
        for _ in range(n):
            out = out * inner
        return out
    if k == "commutator-call":
        return commutator(to_ncpoly(node.children[0]), to_ncpoly(node.children[1]))
    if k == "star-call":
        raise ParseError("star(...) needs symbol mode", node.span[0])
    raise ParseError(f"unsupported node {k!r}", node.span[0])


def _gen_word(name: str, n: int, node: Ast) -> NCPoly:
    if name in _LETTER:
        letter = _LETTER[name]
        if n < 0:
            letter, n = _INVERSE[letter], -n
        return NCPoly.word((letter,) * n)
    if name == "H":
        if n < 0:
            raise ParseError("negative power of H", node.span[0])
        return NCPoly.word((), hdeg=n)
    if name == "r2":
        return NCPoly.word((), modpow=n)
    return NCPoly.scalar(I ** n)


def to_symbol(node: Ast, order: int = DEFAULT_STAR_ORDER) -> Symbol:
    """Symbol-mode translation; like monomials merge."""
    k = node.kind
    if k == "number":
        return Symbol.const(node.value)
    if k == "generator":
        return _gen_symbol(node.value, Fraction(1), node)
    if k == "negation":
        return -to_symbol(node.children[0], order)
    if k == "sum":
        out = Symbol()
        for c in node.children:
            out = out + to_symbol(c, order)
        return out
    if k == "product":
        out = Symbol.const(1)
        for c in node.children:
            out = out * to_symbol(c, order)
        return out
    if k == "power":
        base = node.children[0]
        if base.kind == "generator":
            return _gen_symbol(base.value, node.value, node)
        e = node.value
        if e.denominator != 1 or e < 0:
            raise ParseError("compound expressions take non-negative integer powers only", node.span[0])
        return to_symbol(base, order) ** int(e)
    if k == "star-call":
        o = order if node.value is None else node.value
        return moyal_star(to_symbol(node.children[0], order), to_symbol(node.children[1], order), o)
    if k == "commutator-call":
        return star_commutator(to_symbol(node.children[0], order), to_symbol(node.children[1], order), order)
    raise ParseError(f"unsupported node {k!r}", node.span[0])


def _gen_symbol(name: str, e: Fraction, node: Ast) -> Symbol:
    if name in ("z", "zb", "zi", "zbi"):
        sign = -1 if name in ("zi", "zbi") else 1
        if name in ("z", "zi"):
            return Symbol.monomial(sign * e, 0)
        return Symbol.monomial(0, sign * e)
    if e.denominator != 1:
        raise ParseError(f"{name} takes integer powers only", node.span[0])
    n = int(e)
    if name == "H":
        if n < 0:
            raise ParseError("negative power of H", node.span[0])
        return Symbol.monomial(0, 0, 1, n)
    if name == "r2":
        return Symbol.monomial(n, n)
    return Symbol.const(I ** n)


# ---------------------------------------------------------------- rendering

def _rat(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _exp_text(e: Fraction) -> str:
    if e.denominator == 1:
        return str(e.numerator)
    return f"({_rat(e)})"


def render_ast(node: Ast) -> str:
    k = node.kind
    if k == "number":
        c = node.value
        if c.im:
            return f"({c})"
        return _rat(c.re)
    if k == "generator":
        return node.value
    if k == "negation":
        child = node.children[0]
        body = render_ast(child)
        if child.kind in ("sum", "product"):
            body = f"({body})"
        return "-" + body
    if k == "sum":
        parts = []
        for j, c in enumerate(node.children):
            wrap = c.kind == "sum"
            if c.kind == "negation" and j > 0:
                inner = c.children[0]
                body = render_ast(inner)
                if inner.kind in ("sum", "product"):
                    body = f"({body})"
                parts.append(" - " + body)
                continue
            body = render_ast(c)
            if wrap:
                body = f"({body})"
            parts.append(body if j == 0 else " + " + body)
        return "".join(parts)
    if k == "product":
        out = []
        for c in node.children:
            body = render_ast(c)
            if c.kind in ("sum", "product"):
                body = f"({body})"
            out.append(body)
        return "*".join(out)
    if k == "power":
        base = node.children[0]
        body = render_ast(base)
        if base.kind != "generator" and not (base.kind == "number" and base.value.re.denominator == 1):
            body = f"({body})"
        return f"{body}^{_exp_text(node.value)}"
    if k == "commutator-call":
        a, b = node.children
        return f"comm({render_ast(a)}, {render_ast(b)})"
    if k == "star-call":
        a, b = node.children
        tail = "" if node.value is None else f", {node.value}"
        return f"star({render_ast(a)}, {render_ast(b)}{tail})"
    raise ValueError(f"cannot render node {k!r}")


def _ast_json(node: Ast) -> dict:
    out = {"kind": node.kind, "span": list(node.span)}
    if node.value is not None:
        out["value"] = str(node.value)
    if node.children:
        out["children"] = [_ast_json(c) for c in node.children]
    return out


def _coef_json(c: GaussianRational) -> dict:
    return {"re": _rat(c.re), "im": _rat(c.im)}


def to_json_obj(value) -> dict:
    if isinstance(value, Ast):
        return {"type": "ast", "mode": value.mode, "tree": _ast_json(value)}
    if isinstance(value, NCPoly):
        return {"type": "ncpoly", "text": format_ncpoly(value), "terms": [
            {"coef": _coef_json(c), "hdeg": h, "r2": m, "word": [LETTER_NAMES[x] for x in w]}
            for (h, m, w), c in value.sorted_terms()]}
    if isinstance(value, Symbol):
        return {"type": "symbol", "text": format_symbol(value), "terms": [
            {"coef": _coef_json(value.terms[k]), "hdeg": k[0], "z": _rat(k[1]), "zb": _rat(k[2])}
            for k in sorted(value.terms, key=symbol_sort_key)]}
    if isinstance(value, DiffOpPoly):
        return {"type": "diffop", "text": format_diffop(value), "terms": [
            {"dz": r, "dzb": s, "coef": to_json_obj(value.coeffs[(r, s)])}
            for (r, s) in sorted(value.coeffs)]}
    if isinstance(value, HPolynomial):
        return {"type": "hpoly", "text": str(value),
                "terms": [{"hdeg": d, "coef": _coef_json(c)} for d, c in sorted(value.coeffs.items())]}
    raise TypeError(f"cannot render {type(value).__name__}")


def render(value, fmt: str = "plain") -> str:
    """Deterministic text for an Ast, NCPoly, Symbol, DiffOpPoly or HPolynomial."""
    if fmt == "json":
        return json.dumps(to_json_obj(value), sort_keys=True)
    latex = fmt == "latex"
    if fmt not in ("plain", "latex"):
        raise ValueError(f"unknown format {fmt!r}")
    if isinstance(value, Ast):
        text = render_ast(value)
        return text.replace("*", " ") if latex else text
    if isinstance(value, NCPoly):
        return format_ncpoly(value, latex)
    if isinstance(value, Symbol):
        return format_symbol(value, latex)
    if isinstance(value, DiffOpPoly):
        return format_diffop(value, latex)
    if isinstance(value, HPolynomial):
        return str(value)
    raise TypeError(f"cannot render {type(value).__name__}")


def parse_ncpoly(text: str) -> NCPoly:
    return to_ncpoly(parse(text, "word"))


def parse_symbol(text: str, order: int = DEFAULT_STAR_ORDER) -> Symbol:
    return to_symbol(parse(text, "symbol"), order)
