"""Textual input: series, Witt vectors, 2-forms, symbols and rational functions.

Series grammar (whitespace ignored)::

    sum   := ['+'|'-'] prod (('+'|'-') prod)*
    prod  := power (('*'|'/') power)*
    power := atom ['^' ['-'] INT]
    atom  := INT | 't' | 'pi' | 'g' | '(' sum ')' | 'O' '(' ('t'|'pi') '^' ['-'] INT ')'

``O(pi^k)`` marks the pi-window; ``O(t^k)*pi^j`` bounds the t-window of one
pi-coefficient. Rational functions use the same grammar with variable ``T``.
"""

from __future__ import annotations

import re

from .coeff import FqPoly
from .forms import LOG, OMEGA, Form2
from .milnor import MilnorSym
from .series import LaurentElt
from .weil import RatFun
from .witt import WittVec

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z]+)|(\S))")


class ParseError(ValueError):
    pass


def _tokens(text):
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        num, name, sym = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("name", name))
        elif sym is not None:
            out.append(("sym", sym))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text, algebra):
        self.toks = _tokens(text)
        self.i = 0
        self.alg = algebra
        self.text = text

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            raise ParseError(f"expected {want!r} at token {self.i} in {self.text!r}")
        self.i += 1
        return tok[1]

    def at(self, value):
        return self.peek() == ("sym", value)

    def parse(self):
        v = self.sum()
        if self.i != len(self.toks):
            raise ParseError(f"unexpected {self.peek()[1]!r} in {self.text!r}")
        return v

    def sum(self):
        sign = 1
        if self.at("-") or self.at("+"):
            sign = -1 if self.take() == "-" else 1
        v = self.prod()
        if sign < 0:
            v = -v
        while self.at("+") or self.at("-"):
            op = self.take()
            w = self.prod()
            v = v + w if op == "+" else v - w
        return v

    def prod(self):
        v = self.power()
        while self.at("*") or self.at("/"):
            op = self.take()
            w = self.power()
            v = v * w if op == "*" else self.alg.div(v, w)
        return v

    def _int(self):
        neg = False
        if self.at("-"):
            self.take()
            neg = True
        elif self.at("+"):
            self.take()
        k = self.take("num")
        return -k if neg else k

    def power(self):
        v = self.atom()
        if self.at("^"):
            self.take()
            v = self.alg.pow(v, self._int())
        return v

    def atom(self):
        kind, val = self.peek()
        if kind == "num":
            self.take()
            return self.alg.const(val)
        if kind == "name":
            self.take()
            if val == "O":
                self.take("sym", "(")
                var = self.take("name")
                self.take("sym", "^")
                k = self._int()
                self.take("sym", ")")
                return self.alg.big_o(var, k)
            return self.alg.var(val)
        if self.at("("):
            self.take()
            v = self.sum()
            self.take("sym", ")")
            return v
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")


class _SeriesAlgebra:
    def __init__(self, ctx, level="K"):
        self.ctx = ctx
        self.ring = ctx.K if level == "K" else ctx.f

    def const(self, n):
        return self.ring(n)

    def var(self, name):
        ctx = self.ctx
        if name == "g":
            return self.ring(ctx.F.gen())
        if name == "t":
            return self.ring(ctx.t()) if self.ring is ctx.K else ctx.t()
        if name == "pi" and self.ring is ctx.K:
            return ctx.K.gen()
        raise ParseError(f"unknown variable {name!r}")

    def pow(self, v, k):
        return v ** k

    def div(self, v, w):
        return v / w

    def big_o(self, var, k):
        ctx = self.ctx
        if var == "pi" and self.ring is ctx.K:
            return LaurentElt(ctx.K, {}, hi=k)
        if var == "t":
            z = LaurentElt(ctx.f, {}, hi=k)
            if self.ring is ctx.f:
                return z
            return LaurentElt(ctx.K, {0: z}, hi=float("inf"))
        raise ParseError(f"bad window O({var}^{k})")


def parse_series(ctx, text: str, level: str = "K") -> LaurentElt:
    """Parse a K-element (``level='K'``) or an f-element (``level='f'``)."""
    return _Parser(text, _SeriesAlgebra(ctx, level)).parse()


def parse_witt(ctx, text: str) -> WittVec:
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ParseError("Witt vectors are written [w_0; w_1; ...]")
    parts = [p for p in s[1:-1].split(";")]
    if not parts or any(not p.strip() for p in parts):
        raise ParseError("empty Witt component")
    return WittVec(ctx.K, [parse_series(ctx, p) for p in parts])


_LOG_SUFFIX = re.compile(r"\*?\s*dlog\s*t\s*\^\s*dlog\s*pi\s*$")
_OMEGA_SUFFIX = re.compile(r"\*?\s*dt\s*\^\s*dpi\s*$")


def parse_form2(ctx, text: str) -> Form2:
    for pat, basis in ((_LOG_SUFFIX, LOG), (_OMEGA_SUFFIX, OMEGA)):
        m = pat.search(text)
        if m:
            head = text[: m.start()].strip() or "1"
            return Form2(parse_series(ctx, head), basis)
    raise ParseError("2-forms end with '* dlog t ^ dlog pi' or '* dt ^ dpi'")


def is_form2(text: str) -> bool:
    return bool(_LOG_SUFFIX.search(text) or _OMEGA_SUFFIX.search(text))


_SYMBOL = re.compile(r"\s*([+-]?)\s*(\d*)\s*\*?\s*\{([^{}]*)\}")


def parse_symbol(ctx, text: str) -> MilnorSym:
    pos = 0
    s = MilnorSym()
    text = text.strip()
    if not text:
        raise ParseError("empty symbol")
    while pos < len(text):
        m = _SYMBOL.match(text, pos)
        if not m:
            raise ParseError(f"bad symbol syntax near {text[pos:]!r}")
        sign, coef, body = m.groups()
        if pos and not sign:
            raise ParseError("symbols must be joined by + or -")
        parts = body.split(",")
        if len(parts) != 2:
            raise ParseError("a symbol has exactly two entries")
        n = int(coef) if coef else 1
        if sign == "-":
            n = -n
        a, b = (parse_series(ctx, x) for x in parts)
        s = s + MilnorSym.sym(a, b, n)
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return s


class _RatAlgebra:
    def __init__(self, field):
        self.F = field

    def const(self, n):
        return RatFun(FqPoly(self.F, [n]))

    def var(self, name):
        if name == "T":
            return RatFun(FqPoly(self.F, [0, 1]))
        if name == "g":
            return RatFun(FqPoly(self.F, [self.F.gen()]))
        raise ParseError(f"unknown variable {name!r} (rational functions use T)")

    def pow(self, v, k):
        out = self.const(1)
        base = v if k >= 0 else self.const(1) / v
        for _ in range(abs(k)):
            out = out * base
        return out

    def div(self, v, w):
        return v / w

    def big_o(self, var, k):
        raise ParseError("windows are not allowed in rational functions")


def parse_ratfun(field, text: str) -> RatFun:
    v = _Parser(text, _RatAlgebra(field)).parse()
    if v.num.is_zero():
        raise ParseError("rational function must be nonzero")
    return v
