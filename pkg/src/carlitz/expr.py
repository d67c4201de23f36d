"""Expression parser for field elements and F_q[t]-polynomials.

Grammar (left associative, ^ binds tightest, exponents may be negative):

    expr   := ['-'] term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := atom ('^' ['-'] int)?
    atom   := int | 'th' | 'z' | 'pi' | 't' | '(' expr ')'

`th` is theta, `z` is zeta (the chosen (q-1)-th root of -theta), `pi` the
uniformizer.  In FIELD context `t` is rejected; in TPOLY context the result
is a polynomial in t.  Division is only by units or exact nonzero elements
and may truncate (1/(th+1) has an infinite pi-expansion).
"""

from __future__ import annotations

from typing import List, Optional, Tuple, Union

from .errors import ContextError, ExprSyntaxError
from .fields import FieldConfig, LocalElement
from .tpoly import TPoly

FIELD = "FIELD"
TPOLY = "TPOLY"

_SYMBOLS = ("th", "z", "pi", "t")

Node = Tuple  # ("int", n) | ("sym", s) | ("bin", op, l, r) | ("pow", b, k) | ("neg", x)


class ElementExpr:
    """Parsed expression: AST plus the context it was parsed for."""

    def __init__(self, ast: Node, context: str):
        self.ast = ast
        self.context = context

    def __repr__(self):
        return f"ElementExpr({print_expr(self.ast)!r}, {self.context})"


class _Tokenizer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.tokens: List[Tuple[str, Union[str, int], int]] = []
        self._scan()
        self.idx = 0

    def _scan(self):
        text = self.text
        i = 0
        while i < len(text):
            c = text[i]
            if c.isspace():
                i += 1
                continue
            if c.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                self.tokens.append(("int", int(text[i:j]), i))
                i = j
                continue
            if c.isalpha():
                j = i
                while j < len(text) and text[j].isalpha():
                    j += 1
                name = text[i:j]
                if name not in _SYMBOLS:
                    raise ExprSyntaxError(f"unknown symbol {name!r}", i)
                self.tokens.append(("sym", name, i))
                i = j
                continue
            if c in "+-*/^()":
                self.tokens.append(("op", c, i))
                i += 1
                continue
            raise ExprSyntaxError(f"unexpected character {c!r}", i)
        self.tokens.append(("end", "", len(text)))

    def peek(self):
        return self.tokens[self.idx]

    def next(self):
        tok = self.tokens[self.idx]
        self.idx += 1
        return tok


def parse_element(text: str, context: str = FIELD) -> ElementExpr:
    """Parse per the grammar; `t` is a ContextError in FIELD context."""
    if context not in (FIELD, TPOLY):
        raise ValueError(f"unknown context {context!r}")
    tk = _Tokenizer(text)
    ast = _parse_expr(tk, context)
    kind, val, pos = tk.peek()
    if kind != "end":
        raise ExprSyntaxError(f"unexpected trailing {val!r}", pos)
    return ElementExpr(ast, context)


def _parse_expr(tk: _Tokenizer, ctx: str) -> Node:
    kind, val, _ = tk.peek()
    neg = False
    if kind == "op" and val == "-":
        tk.next()
        neg = True
    node = _parse_term(tk, ctx)
    if neg:
        node = ("neg", node)
    while True:
        kind, val, _ = tk.peek()
        if kind == "op" and val in "+-":
            tk.next()
            rhs = _parse_term(tk, ctx)
            node = ("bin", val, node, rhs)
        else:
            return node


def _parse_term(tk: _Tokenizer, ctx: str) -> Node:
    node = _parse_factor(tk, ctx)
    while True:
        kind, val, _ = tk.peek()
        if kind == "op" and val in "*/":
            tk.next()
            rhs = _parse_factor(tk, ctx)
            node = ("bin", val, node, rhs)
        else:
            return node


def _parse_factor(tk: _Tokenizer, ctx: str) -> Node:
    node = _parse_atom(tk, ctx)
    kind, val, _ = tk.peek()
    if kind == "op" and val == "^":
        tk.next()
        sign = 1
        kind, val, pos = tk.peek()
        if kind == "op" and val == "-":
            tk.next()
            sign = -1
            kind, val, pos = tk.peek()
        if kind != "int":
            raise ExprSyntaxError("exponent must be an integer", pos)
        tk.next()
        node = ("pow", node, sign * val)
    return node


def _parse_atom(tk: _Tokenizer, ctx: str) -> Node:
    kind, val, pos = tk.next()
    if kind == "int":
        return ("int", val)
    if kind == "sym":
        if val == "t" and ctx == FIELD:
            raise ContextError(f"`t` not allowed in FIELD context (position {pos})")
        return ("sym", val)
    if kind == "op" and val == "(":
        node = _parse_expr(tk, ctx)
        kind, val, pos = tk.next()
        if not (kind == "op" and val == ")"):
            raise ExprSyntaxError("expected ')'", pos)
        return ("group", node)
    raise ExprSyntaxError(f"unexpected token {val!r}", pos)


# ---------------------------------------------------------------------------
# printing (canonical form; print(parse(s)) == s on canonical input)
# ---------------------------------------------------------------------------

def print_expr(node: Node) -> str:
    kind = node[0]
    if kind == "int":
        return str(node[1])
    if kind == "sym":
        return node[1]
    if kind == "neg":
        return "-" + print_expr(node[1])
    if kind == "group":
        return "(" + print_expr(node[1]) + ")"
    if kind == "pow":
        return f"{print_expr(node[1])}^{node[2]}"
    if kind == "bin":
        _, op, l, r = node
        return f"{print_expr(l)}{op}{print_expr(r)}"
    raise ValueError(f"bad node {node!r}")


# ---------------------------------------------------------------------------
# evaluation (internal polynomials are plain coefficient lists, so that
# truncated coefficients from division survive until the final wrap)
# ---------------------------------------------------------------------------

_Poly = List[LocalElement]


def eval_element(expr: ElementExpr, cfg: FieldConfig,
                 prec: Optional[int] = None) -> LocalElement:
    """Evaluate a FIELD-context expression to a LocalElement."""
    if expr.context != FIELD:
        raise ValueError("eval_element needs a FIELD-context expression")
    poly = _eval(expr.ast, cfg, prec)
    return poly[0] if poly else cfg.zero()


def eval_tpoly(expr: ElementExpr, cfg: FieldConfig,
               prec: Optional[int] = None) -> TPoly:
    """Evaluate a TPOLY-context expression to a polynomial in t.

    Coefficients must come out exact (polynomial contexts are used for
    F_q[t]-operands like the Carlitz action).
    """
    return TPoly(cfg, _eval(expr.ast, cfg, prec))


def _ptrim(p: _Poly) -> _Poly:
    while p and p[-1].is_exact_zero():
        p.pop()
    return p


def _eval(node: Node, cfg: FieldConfig, prec: Optional[int]) -> _Poly:
    kind = node[0]
    if kind == "int":
        return [cfg.from_int(node[1])]
    if kind == "sym":
        if node[1] == "th":
            return [cfg.theta()]
        if node[1] == "z":
            return [cfg.zeta()]
        if node[1] == "pi":
            return [cfg.pi()]
        return [cfg.zero(), cfg.one()]  # t
    if kind == "neg":
        return [-c for c in _eval(node[1], cfg, prec)]
    if kind == "group":
        return _eval(node[1], cfg, prec)
    if kind == "pow":
        base = _eval(node[1], cfg, prec)
        k = node[2]
        if k >= 0:
            out = [cfg.one()]
            for _ in range(k):
                out = _pmul(cfg, out, base)
            return out
        if len(base) > 1:
            raise ContextError("negative powers of polynomials in t not supported")
        x = base[0] if base else cfg.zero()
        return [_invert(x, cfg, prec) ** (-k)]
    if kind == "bin":
        _, op, l, r = node
        a = _eval(l, cfg, prec)
        b = _eval(r, cfg, prec)
        if op == "+":
            return _padd(cfg, a, b, 1)
        if op == "-":
            return _padd(cfg, a, b, -1)
        if op == "*":
            return _pmul(cfg, a, b)
        if len(b) > 1:
            raise ContextError("division by polynomials in t not supported")
        inv = _invert(b[0] if b else cfg.zero(), cfg, prec)
        return [c * inv for c in a]
    raise ValueError(f"bad node {node!r}")


def _padd(cfg: FieldConfig, a: _Poly, b: _Poly, sign: int) -> _Poly:
    n = max(len(a), len(b))
    out = []
    for j in range(n):
        x = a[j] if j < len(a) else cfg.zero()
        y = b[j] if j < len(b) else cfg.zero()
        out.append(x + y if sign > 0 else x - y)
    return _ptrim(out)


def _pmul(cfg: FieldConfig, a: _Poly, b: _Poly) -> _Poly:
    if not a or not b:
        return []
    out = [cfg.zero() for _ in range(len(a) + len(b) - 1)]
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return _ptrim(out)


def _invert(x: LocalElement, cfg: FieldConfig, prec: Optional[int]) -> LocalElement:
    return x.inv(prec if prec is not None else cfg.default_prec)
