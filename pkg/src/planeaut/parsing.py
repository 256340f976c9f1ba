"""Text forms of endomorphisms, families and univariate polynomials.

Grammar, with the usual precedence (^ over * and /, over + and -):

    tuple  := '(' expr (',' expr)* ')'
    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-')* power
    power  := atom ['^' ['-'] INT]
    atom   := INT | 'x'INT | 't' | '(' expr ')'

Division and negative exponents are restricted to constant units of the
coefficient ring, so 1/2 parses over Q but fails over F2, and t^-1 parses
in a family while x1^-1 never does.  The canonical printer emits this
grammar back, so parse and print round-trip.
"""

from __future__ import annotations

from .degeneration import TFamily
from .endo import Endo
from .errors import NotInvertibleError, ParseError
from .poly import MultiPoly
from .rings import LaurentRing


# -- tokens ------------------------------------------------------------------

_PUNCT = set("+-*/^(),")


def _tokenize(src: str):
    """Yield (kind, value, pos); kinds: int, var, t, punctuation marks."""
    out = []
    i, n = 0, len(src)
    while i < n:
        ch = src[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _PUNCT:
            out.append((ch, ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and src[j].isdigit():
                j += 1
            out.append(("int", int(src[i:j]), i))
            i = j
            continue
        if ch == "x":
            j = i + 1
            while j < n and src[j].isdigit():
                j += 1
            if j == i + 1:
                raise ParseError("variable needs an index, like x1", i)
            out.append(("var", int(src[i + 1:j]), i))
            i = j
            continue
        if ch == "t":
            out.append(("t", "t", i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    return out


# -- AST ---------------------------------------------------------------------

class _Parser:
    def __init__(self, tokens, length):
        self.toks = tokens
        self.i = 0
        self.length = length

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None, self.length)

    def take(self, kind=None):
        tok = self.peek()
        if tok[0] is None:
            raise ParseError("unexpected end of input", tok[2])
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r}", tok[2])
        self.i += 1
        return tok

    def expr(self):
        node = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()
            rhs = self.term()
            node = (op[0] == "+" and "add" or "sub", node, rhs)
        return node

    def term(self):
        node = self.unary()
        while self.peek()[0] in ("*", "/"):
            op = self.take()
            rhs = self.unary()
            node = ("mul" if op[0] == "*" else "div", node, rhs, op[2])
        return node

    def unary(self):
        neg = False
        while self.peek()[0] in ("+", "-"):
            if self.take()[0] == "-":
                neg = not neg
        node = self.power()
        return ("neg", node) if neg else node

    def power(self):
        base = self.atom()
        if self.peek()[0] != "^":
            return base
        caret = self.take()
        sign = 1
        if self.peek()[0] == "-":
            self.take()
            sign = -1
        tok = self.take("int")
        return ("pow", base, sign * tok[1], caret[2])

    def atom(self):
        kind, value, pos = self.peek()
        if kind == "int":
            self.take()
            return ("int", value, pos)
        if kind == "var":
            self.take()
            return ("var", value, pos)
        if kind == "t":
            self.take()
            return ("t", pos)
        if kind == "(":
            self.take()
            node = self.expr()
            self.take(")")
            return node
        raise ParseError("expected a number, variable, t or parenthesis", pos)


def _collect(node, kinds, out):
    if node[0] in kinds:
        out.append(node)
    for child in node[1:]:
        if isinstance(child, tuple):
            _collect(child, kinds, out)


# -- evaluation --------------------------------------------------------------

def _const_unit(poly: MultiPoly, pos: int, what: str):
    """The coefficient of a constant polynomial, or a ParseError."""
    if not poly.is_constant:
        raise ParseError(f"{what} must be a constant", pos)
    return poly.constant_value()


def _eval(node, R, K, nvars, laurent):
    kind = node[0]
    if kind == "int":
        return MultiPoly.from_int(R, nvars, node[1])
    if kind == "var":
        idx = node[1]
        if not 1 <= idx <= nvars:
            raise ParseError(f"unknown variable x{idx} in a {nvars}-component map",
                             node[2])
        exps = tuple(1 if i == idx - 1 else 0 for i in range(nvars))
        return MultiPoly(R, nvars, {exps: R.one})
    if kind == "t":
        return MultiPoly(R, nvars, {(0,) * nvars: {1: K.one}})
    if kind == "neg":
        return -_eval(node[1], R, K, nvars, laurent)
    if kind == "add":
        return _eval(node[1], R, K, nvars, laurent) + _eval(node[2], R, K, nvars, laurent)
    if kind == "sub":
        return _eval(node[1], R, K, nvars, laurent) - _eval(node[2], R, K, nvars, laurent)
    if kind == "mul":
        return _eval(node[1], R, K, nvars, laurent) * _eval(node[2], R, K, nvars, laurent)
    if kind == "div":
        lhs = _eval(node[1], R, K, nvars, laurent)
        rhs = _eval(node[2], R, K, nvars, laurent)
        c = _const_unit(rhs, node[3], "divisor")
        try:
            return lhs.scale(R.invert(c))
        except NotInvertibleError as exc:
            raise ParseError(f"cannot divide: {exc}", node[3]) from None
    if kind == "pow":
        base = _eval(node[1], R, K, nvars, laurent)
        e = node[2]
        if e >= 0:
            return base ** e
        c = _const_unit(base, node[3], "base of a negative power")
        try:
            return MultiPoly(R, nvars, {(0,) * nvars: R.pow(c, e)})
        except NotInvertibleError as exc:
            raise ParseError(f"cannot invert: {exc}", node[3]) from None
    raise ParseError("malformed expression", -1)


def _parse_components(src: str):
    tokens = _tokenize(src)
    parser = _Parser(tokens, len(src))
    parser.take("(")
    comps = [parser.expr()]
    while parser.peek()[0] == ",":
        parser.take()
        comps.append(parser.expr())
    parser.take(")")
    leftover = parser.peek()
    if leftover[0] is not None:
        raise ParseError("trailing input after the closing parenthesis", leftover[2])
    return comps


def parse_automorphism(src: str, field):
    """Parse "(expr, ..., expr)" to an Endo over `field`, or to a TFamily
    over field[t, 1/t] when t occurs."""
    comps = _parse_components(src)
    nvars = len(comps)
    has_t = []
    for node in comps:
        _collect(node, ("t",), has_t)
    if has_t:
        R = LaurentRing(field)
        polys = [_eval(node, R, field, nvars, True) for node in comps]
        return TFamily(Endo(polys))
    polys = [_eval(node, field, field, nvars, False) for node in comps]
    return Endo(polys)


def parse_polynomial(src: str, field) -> dict:
    """Parse a single expression in x1 to a univariate {exp: coeff} dict."""
    tokens = _tokenize(src)
    parser = _Parser(tokens, len(src))
    node = parser.expr()
    leftover = parser.peek()
    if leftover[0] is not None:
        raise ParseError("trailing input after the expression", leftover[2])
    ts = []
    _collect(node, ("t",), ts)
    if ts:
        raise ParseError("t is not allowed in a plain polynomial", ts[0][1])
    poly = _eval(node, field, field, 1, False)
    return {e[0]: c for e, c in poly.terms.items()}
