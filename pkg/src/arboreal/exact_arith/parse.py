"""Text grammar for polynomials and rational functions in t.

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := ('+' | '-') unary | power
    power   := atom ('^' INT)?
    atom    := INT | 't' | '(' expr ')'

A rational literal ``p/q`` is read as the quotient of two integers, so it
follows the usual precedence (``3/2^2`` is 3/4).  Whitespace is
insignificant.  Rendering uses the same grammar, so ``parse(render(x)) == x``.
"""

import re
from fractions import Fraction

from .poly import Poly
from .ratfunc import RatFunc

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


class ParseError(ValueError):
    def __init__(self, message, position, text=""):
        super().__init__(f"{message} at position {position}" + (f" in {text!r}" if text else ""))
        self.position = position


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        start = m.start(m.lastindex) if m.lastindex else m.end()
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", start, text)
            tokens.append(("op", ch, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text, var):
        self.text = text
        self.var = var
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, v, pos = self.take()
        if v != value:
            raise ParseError(f"expected {value!r}", pos, self.text)

    def fail(self, message):
        raise ParseError(message, self.peek()[2], self.text)

    def parse(self):
        if self.peek()[0] == "end":
            self.fail("empty expression")
        value = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected token {self.peek()[1]!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            op, pos = self.take()[1], self.tokens[self.i - 1][2]
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                if rhs.is_zero:
                    raise ParseError("division by zero", pos, self.text)
                value = value / rhs
        return value

    def unary(self):
        kind, v, _ = self.peek()
        if kind == "op" and v in ("+", "-"):
            self.take()
            operand = self.unary()
            return operand if v == "+" else -operand
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            kind, v, pos = self.take()
            if kind != "int":
                raise ParseError("exponent must be a non-negative integer literal", pos, self.text)
            base = base ** v
        return base

    def atom(self):
        kind, v, pos = self.take()
        if kind == "int":
            return RatFunc(v)
        if kind == "name":
            if v != self.var:
                raise ParseError(f"unknown symbol {v!r} (only {self.var!r} is allowed)", pos, self.text)
            return RatFunc(Poly.t())
        if kind == "op" and v == "(":
            value = self.expr()
            self.expect(")")
            return value
        if kind == "end":
            raise ParseError("unexpected end of input", pos, self.text)
        raise ParseError(f"unexpected token {v!r}", pos, self.text)


def parse_ratfunc(text: str, var: str = "t") -> RatFunc:
    return _Parser(text, var).parse()


def parse_poly(text: str, var: str = "t") -> Poly:
    value = parse_ratfunc(text, var)
    if not value.is_poly:
        raise ParseError("expected a polynomial, got a proper rational function", 0, text)
    return value.num.scale(1 / value.den.lc)


def _render_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"({c.numerator}/{c.denominator})"


def render_poly(p: Poly, var: str = "t") -> str:
    if p.is_zero:
        return "0"
    parts = []
    for k in range(p.degree, -1, -1):
        c = p.coeff(k)
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if not mono:
            body = _render_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_render_coeff(a)}*{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def render_ratfunc(a: RatFunc, var: str = "t") -> str:
    if a.is_poly:
        return render_poly(a.num, var)
    return f"({render_poly(a.num, var)})/({render_poly(a.den, var)})"


def render(x, var: str = "t") -> str:
    if isinstance(x, Poly):
        return render_poly(x, var)
    if isinstance(x, RatFunc):
        return render_ratfunc(x, var)
    if isinstance(x, (int, Fraction)):
        return _render_coeff(Fraction(x)) if x >= 0 else "-" + _render_coeff(-Fraction(x))
    raise TypeError(f"cannot render {type(x).__name__}")
