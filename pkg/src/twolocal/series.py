"""Precision-tracked Laurent series over an abstract coefficient field.

A :class:`LaurentElt` stores the coefficients it knows in a sparse dict and a
window: exponents ``< hi`` are known (``hi = inf`` means the series is an
exact finite sum), exponents below ``lo`` are exactly zero when
``zero_below`` is set. The coefficient ring is either a
:class:`~twolocal.coeff.FiniteField` or another :class:`SeriesRing`, so
``K = f((pi))`` is a series ring whose coefficients are ``f = F_q((t))``
elements, each carrying its own t-window.

Operations never guess: a coefficient outside a window raises
:class:`PrecisionLoss`, an uncertifiable leading term raises
:class:`UndeterminedValuation`.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .coeff import FiniteField, get_field
from .errors import (DivisionByZero, EmptyWindow, NotAPthPower, PrecisionLoss,
                     UndeterminedValuation)

INF = math.inf


def _ceil_div(a, b):
    return -((-a) // b)


class SeriesRing:
    """Laurent series in ``var`` over ``base``.

    ``prec`` is the relative precision used when an exact input produces an
    infinite expansion (inversion).
    """

    def __init__(self, base, var: str, prec: int = 16):
        if prec <= 0:
            raise ValueError("precision window must be nonempty")
        self.base = base
        self.var = var
        self.prec = prec
        self.characteristic = base.characteristic
        self._zero = LaurentElt(self, {}, hi=INF)
        self._one = LaurentElt(self, {0: base.one()}, hi=INF)

    @property
    def residue_field(self) -> FiniteField:
        b = self.base
        while isinstance(b, SeriesRing):
            b = b.base
        return b

    @property
    def depth(self) -> int:
        return 1 + (self.base.depth if isinstance(self.base, SeriesRing) else 0)

    def __call__(self, x) -> "LaurentElt":
        if isinstance(x, LaurentElt) and x.ring is self:
            return x
        c = self.base(x)
        if c.is_exact_zero():
            return self._zero
        return LaurentElt(self, {0: c}, hi=INF)

    from_int = __call__

    def zero(self) -> "LaurentElt":
        return self._zero

    def one(self) -> "LaurentElt":
        return self._one

    def gen(self) -> "LaurentElt":
        return self.monomial(1, 1)

    def monomial(self, c, k: int) -> "LaurentElt":
        return LaurentElt(self, {k: self.base(c)}, hi=INF)

    def from_dict(self, d, hi=INF, lo=None, zero_below=True) -> "LaurentElt":
        return LaurentElt(self, {k: self.base(v) for k, v in d.items()},
                          lo=lo, hi=hi, zero_below=zero_below)

    def __repr__(self):
        return f"SeriesRing({self.base!r}, {self.var!r})"


class LaurentElt:
    """An element of a :class:`SeriesRing` with a certified window."""

    __slots__ = ("ring", "coeffs", "lo", "hi", "zero_below")

    def __init__(self, ring: SeriesRing, coeffs, lo=None, hi=INF, zero_below=True):
        cs = {}
        for k, c in coeffs.items():
            if k < hi and not c.is_exact_zero():
                if not zero_below and lo is not None and k < lo:
                    continue
                cs[k] = c
        self.ring = ring
        self.coeffs = cs
        self.hi = hi
        self.zero_below = zero_below
        if lo is None:
            lo = min(cs) if cs else (hi if hi != INF else 0)
        self.lo = lo

    # -- inspection ----------------------------------------------------
    def _lowest(self):
        return min(self.coeffs) if self.coeffs else self.hi

    def is_exact(self) -> bool:
        if self.hi != INF or not self.zero_below:
            return False
        return all(not isinstance(c, LaurentElt) or c.is_exact() for c in self.coeffs.values())

    def is_exact_zero(self) -> bool:
        return not self.coeffs and self.hi == INF and self.zero_below

    def vanishes(self) -> bool:
        """True when every known coefficient is zero."""
        return all(c.vanishes() for c in self.coeffs.values())

    def certified_zero_below(self, n) -> bool:
        """Every coefficient of exponent < n is certified exactly zero."""
        if not self.zero_below or self.hi < n:
            return False
        return all(k >= n for k in self.coeffs)

    def valuation(self) -> int:
        if not self.zero_below:
            raise UndeterminedValuation("coefficients below the window are unknown")
        uncertain = False
        for k in sorted(self.coeffs):
            c = self.coeffs[k]
            if c.vanishes():
                uncertain = True
                continue
            if uncertain:
                raise UndeterminedValuation(
                    f"coefficient below {self.ring.var}^{k} is not certified")
            return k
        raise UndeterminedValuation("no certified nonzero coefficient in the window")

    def leading_coefficient(self):
        return self.coeffs[self.valuation()]

    def coefficient(self, k: int):
        if k >= self.hi:
            raise PrecisionLoss(f"{self.ring.var}^{k} lies beyond the window (hi={self.hi})")
        if k < self.lo and not self.zero_below:
            raise PrecisionLoss(f"{self.ring.var}^{k} lies below the known window")
        c = self.coeffs.get(k)
        return self.ring.base.zero() if c is None else c

    __getitem__ = coefficient

    def terms(self):
        return sorted(self.coeffs.items())

    # -- arithmetic ----------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, LaurentElt) and other.ring is self.ring:
            return other
        try:
            return self.ring(other)
        except TypeError:
            return None

    def _add(self, other, sign):
        hi = min(self.hi, other.hi)
        zb = self.zero_below and other.zero_below
        if zb:
            lo = min(self.lo, other.lo)
        else:
            lo = max(x.lo for x in (self, other) if not x.zero_below)
            if lo >= hi:
                raise EmptyWindow(f"known windows do not overlap ([{lo}, {hi}))")
        out = {k: c for k, c in self.coeffs.items() if k < hi}
        for k, c in other.coeffs.items():
            if k >= hi:
                continue
            if sign < 0:
                c = -c
            out[k] = out[k] + c if k in out else c
        return LaurentElt(self.ring, out, lo=lo, hi=hi, zero_below=zb)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._add(o, 1)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._add(o, -1)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o._add(self, -1)

    def __neg__(self):
        return LaurentElt(self.ring, {k: -c for k, c in self.coeffs.items()},
                          lo=self.lo, hi=self.hi, zero_below=self.zero_below)

    def scale(self, c) -> "LaurentElt":
        """Multiply by an element of the coefficient ring (or an int)."""
        return LaurentElt(self.ring, {k: v * c for k, v in self.coeffs.items()},
                          lo=self.lo, hi=self.hi, zero_below=self.zero_below)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if len(o.coeffs) == 1 and o.hi == INF and o.zero_below:
            (k, c), = o.coeffs.items()
            return self.shift(k).scale(c)
        if len(self.coeffs) == 1 and self.hi == INF and self.zero_below:
            (k, c), = self.coeffs.items()
            return o.shift(k).scale(c)
        if not (self.zero_below and o.zero_below):
            raise PrecisionLoss("product needs coefficients below the known window")
        hi = min(self._lowest() + o.hi, o._lowest() + self.hi)
        out = {}
        for i, x in self.coeffs.items():
            for j, y in o.coeffs.items():
                k = i + j
                if k >= hi:
                    continue
                xy = x * y
                out[k] = out[k] + xy if k in out else xy
        return LaurentElt(self.ring, out, lo=self.lo + o.lo, hi=hi)

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentElt":
        """Multiply by ``var^k``."""
        return LaurentElt(self.ring, {e + k: c for e, c in self.coeffs.items()},
                          lo=self.lo + k, hi=self.hi + k, zero_below=self.zero_below)

    def inverse(self, prec=None) -> "LaurentElt":
        if self.is_exact_zero():
            raise DivisionByZero(f"inverse of 0 in {self.ring.var}-series")
        v = self.valuation()
        lead_inv = self.coeffs[v].inverse()
        if self.hi == INF:
            n = prec if prec is not None else self.ring.prec
        else:
            n = self.hi - v
        if len(self.coeffs) == 1 and self.hi == INF:
            return LaurentElt(self.ring, {-v: lead_inv}, hi=INF)
        a = self.coeffs
        b = [lead_inv]
        for k in range(1, n):
            s = None
            for j in range(1, k + 1):
                aj = a.get(v + j)
                if aj is None:
                    continue
                term = aj * b[k - j]
                s = term if s is None else s + term
            b.append(self.ring.base.zero() if s is None else -(lead_inv * s))
        return LaurentElt(self.ring, {k - v: c for k, c in enumerate(b)}, hi=n - v)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def frobenius(self) -> "LaurentElt":
        """The p-th power, computed coefficientwise (characteristic p)."""
        p = self.ring.characteristic
        return LaurentElt(self.ring, {p * k: c.frobenius() for k, c in self.coeffs.items()},
                          lo=p * self.lo, hi=p * self.hi, zero_below=self.zero_below)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        p = self.ring.characteristic
        if n > 0 and n % p == 0:
            return self.frobenius() ** (n // p)
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def pth_root(self) -> "LaurentElt":
        p = self.ring.characteristic
        out = {}
        for k, c in self.coeffs.items():
            if k % p:
                raise NotAPthPower({self.ring.var: k},
                                   f"not a p-th power: witness {self.ring.var}^{k}")
            try:
                out[k // p] = c.pth_root()
            except NotAPthPower as exc:
                w = dict(exc.witness) if isinstance(exc.witness, dict) else {}
                w[self.ring.var] = k
                raise NotAPthPower(w, f"not a p-th power: witness {_witness_str(w)}") from None
        hi = self.hi if self.hi == INF else _ceil_div(self.hi, p)
        return LaurentElt(self.ring, out, lo=self.lo // p, hi=hi, zero_below=self.zero_below)

    def map_coeffs(self, fn) -> "LaurentElt":
        return LaurentElt(self.ring, {k: fn(c) for k, c in self.coeffs.items()},
                          lo=self.lo, hi=self.hi, zero_below=self.zero_below)

    def map_terms(self, fn) -> "LaurentElt":
        """Apply ``fn(exponent, coeff)`` to every stored term."""
        return LaurentElt(self.ring, {k: fn(k, c) for k, c in self.coeffs.items()},
                          lo=self.lo, hi=self.hi, zero_below=self.zero_below)

    def truncate(self, hi) -> "LaurentElt":
        hi = min(hi, self.hi)
        return LaurentElt(self.ring, self.coeffs, lo=self.lo, hi=hi, zero_below=self.zero_below)

    def restrict(self, keep) -> "LaurentElt":
        """Keep only exponents for which ``keep(k)`` holds (same window)."""
        return LaurentElt(self.ring, {k: c for k, c in self.coeffs.items() if keep(k)},
                          lo=self.lo, hi=self.hi, zero_below=self.zero_below)

    # -- comparison & display -----------------------------------------
    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).vanishes()

    __hash__ = None

    def __bool__(self):
        return not self.vanishes()

    def __str__(self):
        return format_series(self)

    def __repr__(self):
        return f"LaurentElt({format_series(self)})"


def _witness_str(w):
    return "*".join(f"{v}^{k}" for v, k in sorted(w.items(), key=lambda kv: kv[0] != "t"))


# -- textual form ------------------------------------------------------

def monomials(x):
    """Flatten a (possibly nested) series into ``({var: exp}, FqElem)`` pairs."""
    out = []
    for k, c in x.terms():
        if isinstance(c, LaurentElt):
            for inner, cc in monomials(c):
                d = dict(inner)
                d[x.ring.var] = k
                out.append((d, cc))
        else:
            out.append(({x.ring.var: k}, c))
    return out


def _mono_str(c, exps):
    parts = []
    cs = str(c)
    for var in ("t", "pi"):
        k = exps.get(var, 0)
        if k:
            parts.append(var if k == 1 else f"{var}^{k}")
    if not parts:
        return cs
    if cs == "1":
        return "*".join(parts)
    if "+" in cs:
        cs = f"({cs})"
    return "*".join([cs] + parts)


def _order_key(item):
    exps, _ = item
    return (exps.get("pi", 0), exps.get("t", 0))


def format_series(x) -> str:
    terms = sorted(monomials(x), key=_order_key)
    s = "+".join(_mono_str(c, e) for e, c in terms)
    s = s.replace("+-", "-")
    tails = []
    if x.hi != INF:
        tails.append(f"O({x.ring.var}^{x.hi})")
    for k, c in x.terms():
        if isinstance(c, LaurentElt) and c.hi != INF:
            tails.append(f"O({c.ring.var}^{c.hi})*{x.ring.var}^{k}")
    if tails:
        s = "+".join(([s] if s else []) + tails)
    return s or "0"


def to_json(x):
    """JSON form ``{lo, hi, coeffs: [[expo, coeff], ...]}``, nested for K."""
    coeffs = []
    for k, c in x.terms():
        coeffs.append([k, to_json(c) if isinstance(c, LaurentElt) else str(c)])
    return {"lo": x.lo if x.lo != INF else None, "hi": None if x.hi == INF else x.hi,
            "zero_below": x.zero_below, "coeffs": coeffs}


def from_json(ring: SeriesRing, data) -> LaurentElt:
    hi = INF if data.get("hi") is None else data["hi"]
    coeffs = {}
    for k, c in data["coeffs"]:
        if isinstance(ring.base, SeriesRing):
            coeffs[k] = from_json(ring.base, c)
        else:
            coeffs[k] = ring.base.parse(c)
    return LaurentElt(ring, coeffs, lo=data.get("lo"), hi=hi,
                      zero_below=data.get("zero_below", True))


# -- the two-level context ---------------------------------------------

@dataclass
class Context:
    """Field parameters plus default windows for f = F_q((t)) and K = f((pi))."""

    p: int = 2
    e: int = 1
    m_max: int = 3
    t_window: tuple = (-8, 8)
    pi_window: tuple = (-8, 8)
    seed: int = 0
    F: FiniteField = field(init=False, repr=False)
    f: SeriesRing = field(init=False, repr=False)
    K: SeriesRing = field(init=False, repr=False)

    def __post_init__(self):
        if self.t_window[1] <= self.t_window[0] or self.pi_window[1] <= self.pi_window[0]:
            raise ValueError("precision windows must be nonempty")
        if not 1 <= self.m_max <= 4:
            raise ValueError("m_max must be in 1..4")
        self.F = get_field(self.p, self.e)
        self.f = SeriesRing(self.F, "t", prec=self.t_window[1] - self.t_window[0])
        self.K = SeriesRing(self.f, "pi", prec=self.pi_window[1] - self.pi_window[0])

    def rng(self, salt=0) -> random.Random:
        return random.Random(self.seed * 1_000_003 + salt)

    def mono(self, c, i: int, j: int) -> LaurentElt:
        """The exact K-element c * t^i * pi^j."""
        return self.K.monomial(self.f.monomial(c, i), j)

    def t(self, i: int = 1) -> LaurentElt:
        return self.f.monomial(1, i)

    def from_terms(self, terms) -> LaurentElt:
        """Exact K-element from ``{(t_exp, pi_exp): coeff}``."""
        rows = {}
        for (i, j), c in terms.items():
            rows.setdefault(j, {})[i] = self.F(c)
        return self.K.from_dict({j: self.f.from_dict(r) for j, r in rows.items()})

    def terms_of(self, x: LaurentElt):
        """Inverse of :meth:`from_terms` on the known coefficients."""
        out = {}
        for j, c in x.terms():
            for i, cc in c.terms():
                out[(i, j)] = cc
        return out

    def random_f(self, rng, t_range=(-3, 4), nterms=2) -> LaurentElt:
        d = {}
        for _ in range(nterms):
            d[rng.randrange(*t_range)] = self.F.element(rng.randrange(self.F.q))
        return self.f.from_dict(d)

    def random_K(self, rng, t_range=(-3, 4), pi_range=(-3, 4), nterms=3) -> LaurentElt:
        d = {}
        for _ in range(nterms):
            d[(rng.randrange(*t_range), rng.randrange(*pi_range))] = \
                self.F.element(rng.randrange(self.F.q))
        return self.from_terms(d)

    def random_unit_K(self, rng, t_range=(-3, 4), nterms=2, lead_val=None) -> LaurentElt:
        """Random nonzero K-element whose leading coefficient is a monomial in t.

        Monomial leading coefficients keep inverses exact in t.
        """
        j0 = rng.randrange(-2, 3) if lead_val is None else lead_val
        c = self.F.element(rng.randrange(1, self.F.q))
        d = {(rng.randrange(*t_range), j0): c}
        for _ in range(nterms - 1):
            key = (rng.randrange(*t_range), j0 + rng.randrange(1, 4))
            d[key] = self.F.element(rng.randrange(self.F.q))
        return self.from_terms(d)


# -- operation-level API -------------------------------------------------

def ls_arith(a: LaurentElt, b: LaurentElt, op: str) -> LaurentElt:
    if a.ring is not b.ring:
        raise TypeError("series from incompatible rings")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def ls_inv(a: LaurentElt, prec=None) -> LaurentElt:
    return a.inverse(prec)


def ls_val(a: LaurentElt) -> int:
    return a.valuation()


def ls_pth_root(a: LaurentElt) -> LaurentElt:
    return a.pth_root()


def ls_coeff(a: LaurentElt, expo: int):
    return a.coefficient(expo)


def tshift(x: LaurentElt, k: int) -> LaurentElt:
    """Multiply a K-element by t^k."""
    return x.map_coeffs(lambda c: c.shift(k))


def theta_t(x: LaurentElt) -> LaurentElt:
    """t d/dt applied to a K-element (or an f-element)."""
    if isinstance(x.ring.base, SeriesRing):
        return x.map_coeffs(theta_t)
    return x.map_terms(lambda k, c: c * k)


def theta_pi(x: LaurentElt) -> LaurentElt:
    """pi d/dpi applied to a K-element."""
    return x.map_terms(lambda k, c: c * k)
