"""Arithmetic in small finite fields F_q, q = p^e, and in F_q[T].

Elements are stored as integers ``v = c_0 + c_1 p + ... + c_{e-1} p^{e-1}``
encoding the polynomial ``c_0 + c_1 g + ...`` in a fixed generator ``g``.
All field operations are table lookups; tables are built once per (p, e).
"""

from __future__ import annotations

import itertools
import re
from functools import lru_cache

from .errors import DivisionByZero

ALLOWED_PRIMES = (2, 3, 5)
MAX_DEGREE = 3


def _poly_has_root(coeffs, p):
    for x in range(p):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * x + c) % p
        if acc == 0:
            return True
    return False


def canonical_modulus(p: int, e: int) -> tuple:
    """Lexicographically smallest monic irreducible of degree e over Z/p.

    Coefficients are compared low degree first. Returned low-degree first,
    including the leading 1. For e <= 3 irreducible means root-free.
    """
    if e == 1:
        return (0, 1)
    for low in itertools.product(range(p), repeat=e):
        coeffs = tuple(low) + (1,)
        if not _poly_has_root(coeffs, p):
            return coeffs
    raise ValueError(f"no irreducible of degree {e} over F_{p}")


class FiniteField:
    """The field F_{p^e} with table-driven arithmetic."""

    def __init__(self, p: int, e: int = 1):
        if p not in ALLOWED_PRIMES:
            raise ValueError(f"p must be one of {ALLOWED_PRIMES}, got {p}")
        if not 1 <= e <= MAX_DEGREE:
            raise ValueError(f"e must be in 1..{MAX_DEGREE}, got {e}")
        self.p = p
        self.e = e
        self.q = p**e
        self.characteristic = p
        self.modulus = canonical_modulus(p, e)
        self._build_tables()
        self._elements = tuple(FqElem(self, v) for v in range(self.q))

    # -- construction -------------------------------------------------
    def _digits(self, v):
        out = []
        for _ in range(self.e):
            out.append(v % self.p)
            v //= self.p
        return out

    def _encode(self, digits):
        v = 0
        for c in reversed(digits):
            v = v * self.p + c
        return v

    def _polymul(self, a, b):
        p, e = self.p, self.e
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] = (prod[i + j] + x * y) % p
        mod = self.modulus
        for k in range(len(prod) - 1, e - 1, -1):
            c = prod[k]
            if c:
                for j in range(e + 1):
                    prod[k - e + j] = (prod[k - e + j] - c * mod[j]) % p
        return prod[:e]

    def _build_tables(self):
        q, p = self.q, self.p
        digits = [self._digits(v) for v in range(q)]
        self._add = [[self._encode([(x + y) % p for x, y in zip(digits[a], digits[b])])
                      for b in range(q)] for a in range(q)]
        self._neg = [self._encode([(-x) % p for x in digits[a]]) for a in range(q)]
        self._mul = [[self._encode(self._polymul(digits[a], digits[b]))
                      for b in range(q)] for a in range(q)]
        self._inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if self._mul[a][b] == 1:
                    self._inv[a] = b
                    break
        self._frob = [self._pow_int(a, p) for a in range(q)]
        self._frobinv = [0] * q
        for a in range(q):
            self._frobinv[self._frob[a]] = a
        self._trace = []
        for a in range(q):
            acc, x = 0, a
            for _ in range(self.e):
                acc = self._add[acc][x]
                x = self._frob[x]
            # the trace lands in the prime field: only the constant digit survives
            self._trace.append(acc % p)

    def _pow_int(self, a, n):
        result, base = 1, a
        while n:
            if n & 1:
                result = self._mul[result][base]
            base = self._mul[base][base]
            n >>= 1
        return result

    # -- public API ----------------------------------------------------
    def __call__(self, x) -> "FqElem":
        if isinstance(x, FqElem):
            if x.field is not self:
                raise TypeError("element of a different field")
            return x
        if isinstance(x, int):
            return self._elements[x % self.p]
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot coerce {x!r} into F_{self.q}")

    from_int = __call__

    def element(self, v: int) -> "FqElem":
        return self._elements[v]

    def zero(self) -> "FqElem":
        return self._elements[0]

    def one(self) -> "FqElem":
        return self._elements[1]

    def gen(self) -> "FqElem":
        if self.e == 1:
            return self._elements[0]
        return self._elements[self.p]

    def elements(self):
        return self._elements

    def nonzero_elements(self):
        return self._elements[1:]

    def basis(self):
        """F_p-basis 1, g, ..., g^{e-1}."""
        return tuple(self._elements[self.p**k] for k in range(self.e))

    def parse(self, text: str) -> "FqElem":
        """Parse a polynomial in ``g`` such as ``g^2+2*g+1``."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty field literal")
        total = self.zero()
        for sign, term in re.findall(r"([+-]?)([^+-]+)", s):
            m = re.fullmatch(r"(\d+)?\*?(g(?:\^(\d+))?)?", term)
            if m is None or (m.group(1) is None and m.group(2) is None):
                raise ValueError(f"bad field literal {text!r}")
            c = int(m.group(1)) if m.group(1) is not None else 1
            val = self(c)
            if m.group(2):
                k = int(m.group(3)) if m.group(3) else 1
                val = val * self.gen() ** k if self.e > 1 else self.zero()
            total = total - val if sign == "-" else total + val
        return total

    def __repr__(self):
        return f"FiniteField({self.p}, {self.e})"

    def __reduce__(self):
        return (get_field, (self.p, self.e))


@lru_cache(maxsize=None)
def get_field(p: int, e: int = 1) -> FiniteField:
    return FiniteField(p, e)


class FqElem:
    """Immutable element of a :class:`FiniteField`."""

    __slots__ = ("field", "v")

    def __init__(self, field: FiniteField, v: int):
        self.field = field
        self.v = v

    @property
    def rep(self) -> tuple:
        return tuple(self.field._digits(self.v))

    def _coerce(self, other):
        if isinstance(other, FqElem):
            if other.field is not self.field:
                raise TypeError("mixing elements of different fields")
            return other.v
        if isinstance(other, int):
            return other % self.field.p
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.field._elements[self.field._add[self.v][o]]

    __radd__ = __add__

    def __neg__(self):
        return self.field._elements[self.field._neg[self.v]]

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        f = self.field
        return f._elements[f._add[self.v][f._neg[o]]]

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        f = self.field
        return f._elements[f._add[o][f._neg[self.v]]]

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.field._elements[self.field._mul[self.v][o]]

    __rmul__ = __mul__

    def inverse(self) -> "FqElem":
        if self.v == 0:
            raise DivisionByZero("inverse of 0 in F_q")
        return self.field._elements[self.field._inv[self.v]]

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o == 0:
            raise DivisionByZero("division by 0 in F_q")
        f = self.field
        return f._elements[f._mul[self.v][f._inv[o]]]

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.field._elements[o] * self.inverse()

    def __pow__(self, n: int):
        f = self.field
        if n < 0:
            return self.inverse() ** (-n)
        if self.v == 0:
            return f._elements[1 if n == 0 else 0]
        return f._elements[f._pow_int(self.v, n % (f.q - 1))]

    def frobenius(self) -> "FqElem":
        return self.field._elements[self.field._frob[self.v]]

    def frobenius_inverse(self) -> "FqElem":
        return self.field._elements[self.field._frobinv[self.v]]

    pth_root = frobenius_inverse

    def trace(self) -> int:
        """Absolute trace to Z/p, returned as an int in [0, p)."""
        return self.field._trace[self.v]

    def is_exact_zero(self) -> bool:
        return self.v == 0

    vanishes = is_exact_zero

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.v == o

    def __hash__(self):
        return hash((self.field.p, self.field.e, self.v))

    def __str__(self):
        f = self.field
        if f.e == 1:
            return str(self.v)
        parts = []
        for k, c in reversed(list(enumerate(self.rep))):
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
            else:
                mono = "g" if k == 1 else f"g^{k}"
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(parts) if parts else "0"

    def __repr__(self):
        return f"FqElem({self})"


def frobenius(a: FqElem, direction: str = "forward") -> FqElem:
    if direction == "forward":
        return a.frobenius()
    if direction == "inverse":
        return a.frobenius_inverse()
    raise ValueError(f"direction must be 'forward' or 'inverse', not {direction!r}")


def trace(a: FqElem) -> int:
    return a.trace()


def fq_arith(a: FqElem, b: FqElem, op: str) -> FqElem:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


class FqPoly:
    """Univariate polynomial over a :class:`FiniteField`, low degree first."""

    __slots__ = ("field", "c")

    def __init__(self, field: FiniteField, coeffs=()):
        self.field = field
        cs = [field(x) for x in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.c = tuple(cs)

    @classmethod
    def monomial(cls, field, k, coeff=1):
        return cls(field, [0] * k + [coeff])

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def is_zero(self):
        return not self.c

    def lc(self) -> FqElem:
        return self.c[-1] if self.c else self.field.zero()

    def monic(self) -> "FqPoly":
        inv = self.lc().inverse()
        return FqPoly(self.field, [x * inv for x in self.c])

    def __add__(self, other):
        other = self._lift(other)
        n = max(len(self.c), len(other.c))
        z = self.field.zero()
        return FqPoly(self.field, [(self.c[i] if i < len(self.c) else z)
                                   + (other.c[i] if i < len(other.c) else z) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return FqPoly(self.field, [-x for x in self.c])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        if not self.c or not other.c:
            return FqPoly(self.field)
        out = [self.field.zero()] * (len(self.c) + len(other.c) - 1)
        for i, x in enumerate(self.c):
            if x:
                for j, y in enumerate(other.c):
                    out[i + j] = out[i + j] + x * y
        return FqPoly(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result, base = FqPoly(self.field, [1]), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        other = self._lift(other)
        if not other.c:
            raise DivisionByZero("polynomial division by zero")
        rem = list(self.c)
        q = [self.field.zero()] * max(len(rem) - len(other.c) + 1, 0)
        inv = other.lc().inverse()
        d = other.degree
        for k in range(len(rem) - 1, d - 1, -1):
            c = rem[k]
            if c:
                f = c * inv
                q[k - d] = f
                for j, y in enumerate(other.c):
                    rem[k - d + j] = rem[k - d + j] - f * y
        return FqPoly(self.field, q), FqPoly(self.field, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def gcd(self, other) -> "FqPoly":
        a, b = self, self._lift(other)
        while b.c:
            a, b = b, a % b
        return a.monic() if a.c else a

    def __call__(self, x: FqElem) -> FqElem:
        acc = self.field.zero()
        for c in reversed(self.c):
            acc = acc * x + c
        return acc

    def _lift(self, other):
        if isinstance(other, FqPoly):
            return other
        return FqPoly(self.field, [other])

    def __eq__(self, other):
        if isinstance(other, (int, FqElem)):
            other = self._lift(other)
        if not isinstance(other, FqPoly):
            return NotImplemented
        return self.c == other.c

    def __hash__(self):
        return hash(tuple(x.v for x in self.c))

    def __str__(self):
        if not self.c:
            return "0"
        parts = []
        for k in range(len(self.c) - 1, -1, -1):
            c = self.c[k]
            if not c:
                continue
            cs = str(c)
            if self.field.e > 1 and ("+" in cs) and k > 0:
                cs = f"({cs})"
            mono = "" if k == 0 else ("T" if k == 1 else f"T^{k}")
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            else:
                parts.append(f"{cs}*{mono}")
        return "+".join(parts)

    __repr__ = __str__


@lru_cache(maxsize=None)
def monic_polys(field: FiniteField, d: int):
    out = []
    for low in itertools.product(field.elements(), repeat=d):
        out.append(FqPoly(field, list(low) + [field.one()]))
    return tuple(out)


@lru_cache(maxsize=None)
def monic_irreducibles(field: FiniteField, d: int):
    """All monic irreducible polynomials of degree d (trial division)."""
    smaller = [g for k in range(1, d // 2 + 1) for g in monic_irreducibles(field, k)]
    return tuple(f for f in monic_polys(field, d)
                 if not any((f % g).is_zero() for g in smaller))
