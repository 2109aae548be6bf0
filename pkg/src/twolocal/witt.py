"""Truncated p-typical Witt vectors over an arbitrary ring.

Components are stored in the order (w_0, ..., w_{m-1}) with
a = sum_i V^i [w_i], so V is a right shift and R drops the last slot.

Sum, product and negation use universal integer polynomials obtained by
solving the ghost recursion; they are generated lazily per (p, m), cached,
and reduced mod p when the base ring has characteristic p.
"""

from __future__ import annotations

import threading
from functools import reduce

from .errors import LengthMismatch


# -- sparse integer polynomials -------------------------------------------
# A polynomial in N variables is a dict {exponent tuple: int}.

def _padd(a, b, sign=1):
    out = dict(a)
    for k, c in b.items():
        v = out.get(k, 0) + sign * c
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def _pmul(a, b):
    out = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = tuple(x + y for x, y in zip(ka, kb))
            v = out.get(k, 0) + ca * cb
            if v:
                out[k] = v
            else:
                out.pop(k, None)
    return out


def _ppow(a, n, nvars):
    result = {(0,) * nvars: 1}
    base = a
    while n:
        if n & 1:
            result = _pmul(result, base)
        n >>= 1
        if n:
            base = _pmul(base, base)
    return result


def _pvar(i, nvars, exp=1):
    k = [0] * nvars
    k[i] = exp
    return {tuple(k): 1}


def _pscale(a, c):
    return {k: v * c for k, v in a.items()} if c else {}


class IntegerRing:
    """Z as a ring object, used by the ghost-component oracle."""

    characteristic = 0

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n):
        return int(n)

    __call__ = from_int


ZZ = IntegerRing()


class WittPolyCache:
    """Universal S_n, P_n, N_n for one (p, m), generated on first use.

    Variables 0..m-1 are X_0..X_{m-1}, m..2m-1 are Y_0..Y_{m-1}.
    """

    _lock = threading.Lock()
    _cache: dict = {}

    def __init__(self, p: int, m: int):
        self.p, self.m = p, m
        self.sum = self._solve(lambda X, Y: _padd(X, Y), binary=True)
        self.prod = self._solve(lambda X, Y: _pmul(X, Y), binary=True)
        self.neg = self._solve(lambda X, Y: _pscale(X, -1), binary=False)
        self._modp = {}

    @classmethod
    def get(cls, p: int, m: int) -> "WittPolyCache":
        key = (p, m)
        hit = cls._cache.get(key)
        if hit is None:
            # compute outside the lock; duplicated work is harmless
            hit = cls(p, m)
            with cls._lock:
                hit = cls._cache.setdefault(key, hit)
        return hit

    def _ghost(self, n, offset, nvars):
        p = self.p
        g = {}
        for i in range(n + 1):
            g = _padd(g, _pscale(_pvar(offset + i, nvars, p ** (n - i)), p ** i))
        return g

    def _solve(self, op, binary):
        p, m = self.p, self.m
        nv = 2 * m
        polys = []
        for n in range(m):
            target = op(self._ghost(n, 0, nv), self._ghost(n, m, nv))
            for i, s in enumerate(polys):
                target = _padd(target, _pscale(_ppow(s, p ** (n - i), nv), p ** i), -1)
            d = p ** n
            s_n = {}
            for k, c in target.items():
                q, r = divmod(c, d)
                if r:
                    raise ArithmeticError("ghost recursion did not divide")
                s_n[k] = q
            polys.append(s_n)
        return polys

    def reduced(self, kind: str, char: int):
        """Polynomials of ``kind`` with coefficients reduced mod ``char``."""
        polys = getattr(self, kind)
        if not char:
            return polys
        key = (kind, char)
        if key not in self._modp:
            self._modp[key] = [{k: c % char for k, c in P.items() if c % char} for P in polys]
        return self._modp[key]


def _eval(poly, values, ring):
    """Evaluate a sparse integer polynomial at ring elements."""
    if not poly:
        return ring.zero()
    nv = len(values)
    maxexp = [0] * nv
    for k in poly:
        for i, e in enumerate(k):
            if e > maxexp[i]:
                maxexp[i] = e
    powers = []
    for i, x in enumerate(values):
        row = [ring.one()]
        if maxexp[i] and not _is_zero(x):
            for _ in range(maxexp[i]):
                row.append(row[-1] * x)
        powers.append(row)
    total = None
    for k, c in poly.items():
        term = None
        dead = False
        for i, e in enumerate(k):
            if e:
                row = powers[i]
                if len(row) == 1:
                    dead = True
                    break
                term = row[e] if term is None else term * row[e]
        if dead:
            continue
        if term is None:
            term = ring.from_int(c)
        elif c != 1:
            term = term * c
        total = term if total is None else total + term
    return ring.zero() if total is None else total


def _is_zero(x):
    if isinstance(x, int):
        return x == 0
    return x.is_exact_zero()


class WittVec:
    """An element of W_m(ring)."""

    __slots__ = ("ring", "comps")

    def __init__(self, ring, comps):
        self.ring = ring
        self.comps = tuple(comps)
        if not self.comps:
            raise ValueError("Witt vectors have length >= 1")

    @property
    def m(self) -> int:
        return len(self.comps)

    @property
    def p(self) -> int:
        return self.ring.characteristic

    def __len__(self):
        return len(self.comps)

    def __getitem__(self, i):
        return self.comps[i]

    def _check(self, other):
        if not isinstance(other, WittVec):
            raise TypeError("expected a Witt vector")
        if other.m != self.m:
            raise LengthMismatch(f"lengths {self.m} and {other.m} differ")

    def _apply(self, kind, values, p):
        polys = WittPolyCache.get(p, self.m).reduced(kind, self.ring.characteristic)
        return WittVec(self.ring, [_eval(P, values, self.ring) for P in polys])

    def add(self, other, p=None):
        self._check(other)
        return self._apply("sum", self.comps + other.comps, p or self.p)

    def mul(self, other, p=None):
        self._check(other)
        return self._apply("prod", self.comps + other.comps, p or self.p)

    def neg(self, p=None):
        p = p or self.p
        if p != 2 and self.ring.characteristic:
            return WittVec(self.ring, [-c for c in self.comps])
        zeros = tuple(self.ring.zero() for _ in self.comps)
        return self._apply("neg", self.comps + zeros, p)

    def sub(self, other, p=None):
        return self.add(other.neg(p), p)

    def __add__(self, other):
        return self.add(other)

    def __sub__(self, other):
        return self.sub(other)

    def __neg__(self):
        return self.neg()

    def __mul__(self, other):
        if isinstance(other, int):
            return self.times_int(other)
        return self.mul(other)

    def times_int(self, n: int, p=None) -> "WittVec":
        result = zero_vec(self.ring, self.m)
        base = self if n >= 0 else self.neg(p)
        n = abs(n)
        while n:
            if n & 1:
                result = result.add(base, p)
            n >>= 1
            if n:
                base = base.add(base, p)
        return result

    def frobenius(self) -> "WittVec":
        if not self.ring.characteristic:
            raise ValueError("componentwise Frobenius needs characteristic p")
        return WittVec(self.ring, [_frob(c, self.p) for c in self.comps])

    def verschiebung(self) -> "WittVec":
        return WittVec(self.ring, (self.ring.zero(),) + self.comps)

    def restrict(self) -> "WittVec":
        if self.m < 2:
            raise LengthMismatch("R needs length >= 2")
        return WittVec(self.ring, self.comps[:-1])

    def ghost(self, p) -> list:
        """Ghost components (characteristic 0 only)."""
        return ghost_components(self.comps, p)

    def is_zero(self) -> bool:
        return all(_is_zero(c) for c in self.comps)

    def __eq__(self, other):
        if not isinstance(other, WittVec):
            return NotImplemented
        return self.m == other.m and all(a == b for a, b in zip(self.comps, other.comps))

    __hash__ = None

    def __str__(self):
        return "[" + "; ".join(str(c) for c in self.comps) + "]"

    def __repr__(self):
        return f"WittVec({self})"


def _frob(c, p):
    if isinstance(c, int):
        return c ** p
    return c.frobenius()


def ghost_components(comps, p) -> list:
    return [sum(p ** i * comps[i] ** (p ** (n - i)) for i in range(n + 1))
            for n in range(len(comps))]


def zero_vec(ring, m: int) -> WittVec:
    return WittVec(ring, [ring.zero()] * m)


def one_vec(ring, m: int) -> WittVec:
    return witt_teich(ring.one(), m, ring)


# -- operation-level API -------------------------------------------------

def witt_arith(a: WittVec, b: WittVec, op: str, p=None) -> WittVec:
    """Ring operations; ``p`` is required when the ring has characteristic 0."""
    if op == "add":
        return a.add(b, p)
    if op == "sub":
        return a.sub(b, p)
    if op == "mul":
        return a.mul(b, p)
    raise ValueError(f"unknown op {op!r}")


def witt_F(a: WittVec) -> WittVec:
    return a.frobenius()


def witt_V(a: WittVec) -> WittVec:
    return a.verschiebung()


def witt_R(a: WittVec) -> WittVec:
    return a.restrict()


def witt_teich(x, m: int, ring=None) -> WittVec:
    ring = ring if ring is not None else getattr(x, "ring", None) or getattr(x, "field")
    return WittVec(ring, [x] + [ring.zero()] * (m - 1))


def V_power(a: WittVec, k: int) -> WittVec:
    return reduce(lambda x, _: x.verschiebung(), range(k), a)


class PolyRingModP:
    """F_p[X_0, ..., X_{n-1}] as a ring object, for symbolic Witt identities."""

    def __init__(self, p: int, nvars: int):
        self.characteristic = p
        self.nvars = nvars

    def zero(self):
        return ModPPoly(self, {})

    def one(self):
        return ModPPoly(self, {(0,) * self.nvars: 1})

    def from_int(self, n):
        n %= self.characteristic
        return ModPPoly(self, {(0,) * self.nvars: n} if n else {})

    __call__ = from_int

    def var(self, i):
        return ModPPoly(self, _pvar(i, self.nvars))


class ModPPoly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    def _lift(self, other):
        return other if isinstance(other, ModPPoly) else self.ring.from_int(other)

    def _norm(self, d):
        p = self.ring.characteristic
        return ModPPoly(self.ring, {k: v % p for k, v in d.items() if v % p})

    def __add__(self, other):
        return self._norm(_padd(self.terms, self._lift(other).terms))

    __radd__ = __add__

    def __neg__(self):
        return self._norm(_pscale(self.terms, -1))

    def __sub__(self, other):
        return self._norm(_padd(self.terms, self._lift(other).terms, -1))

    def __mul__(self, other):
        return self._norm(_pmul(self.terms, self._lift(other).terms))

    __rmul__ = __mul__

    def frobenius(self):
        p = self.ring.characteristic
        return ModPPoly(self.ring, {tuple(p * e for e in k): c for k, c in self.terms.items()})

    def is_exact_zero(self):
        return not self.terms

    def __eq__(self, other):
        return self.terms == self._lift(other).terms

    __hash__ = None
