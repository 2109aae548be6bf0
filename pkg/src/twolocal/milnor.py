"""Milnor K_2 symbols over K, observed through the tame symbol and dlog.

There is no normal form for symbols; two symbols are compared only through
what they map to.
"""

from __future__ import annotations

import random

from .errors import UndeterminedValuation
from .forms import LOG, Form2
from .series import INF, LaurentElt, theta_pi, theta_t


class MilnorSym:
    """A formal sum  sum_k n_k {a_k, b_k}  with a_k, b_k in K^x."""

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        out = []
        for n, a, b in terms:
            if n:
                for x in (a, b):
                    if x.vanishes():
                        raise UndeterminedValuation("symbol entries must be certified nonzero")
                out.append((int(n), a, b))
        self.terms = tuple(out)

    @classmethod
    def sym(cls, a, b, n=1) -> "MilnorSym":
        return cls([(n, a, b)])

    def __add__(self, other):
        return MilnorSym(self.terms + other.terms)

    def __neg__(self):
        return MilnorSym([(-n, a, b) for n, a, b in self.terms])

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k: int):
        return MilnorSym([(k * n, a, b) for n, a, b in self.terms])

    def __len__(self):
        return len(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for n, a, b in self.terms:
            s = "{" + f"{a}, {b}" + "}"
            parts.append(("-" if n < 0 else "+") + (f"{abs(n)}" if abs(n) != 1 else "") + s)
        out = "".join(parts)
        return out[1:] if out.startswith("+") else out

    __repr__ = __str__


def _tame_one(a: LaurentElt, b: LaurentElt):
    va, vb = a.valuation(), b.valuation()
    a0, b0 = a.coeffs[va], b.coeffs[vb]
    val = a0 ** vb * b0 ** (-va)
    if (va * vb) % 2:
        val = -val
    return val


def tame(s: MilnorSym):
    """Product of (-1)^(v(a)v(b)) a^v(b) / b^v(a) reduced mod pi, as an f-element."""
    result = None
    for n, a, b in s.terms:
        v = _tame_one(a, b) ** n
        result = v if result is None else result * v
    if result is None:
        raise ValueError("tame symbol of the empty sum needs a field; use tame_in")
    return result


def tame_in(s: MilnorSym, K) -> LaurentElt:
    return K.base.one() if not s.terms else tame(s)


def _dlog_pair(a: LaurentElt):
    inv = a.inverse()
    return theta_t(a) * inv, theta_pi(a) * inv


def sym_dlog(s: MilnorSym, K=None) -> Form2:
    """sum n dlog a ^ dlog b, in the omega' basis."""
    total = None
    for n, a, b in s.terms:
        xa, ya = _dlog_pair(a)
        xb, yb = _dlog_pair(b)
        c = (xa * yb - ya * xb) * n
        total = c if total is None else total + c
    if total is None:
        if K is None:
            raise ValueError("dlog of the empty sum needs the field K")
        total = K.zero()
    return Form2(total, LOG)


def split_phi(s: MilnorSym, K=None) -> MilnorSym:
    """s - {tame(s), pi}, with the tame value lifted as a pi-constant."""
    if not s.terms:
        return s
    K = s.terms[0][1].ring
    lift = K(tame(s))
    return s + MilnorSym([(-1, lift, K.gen())])


def _one_unit_level(x: LaurentElt):
    """v_pi(x - 1) when x is a certified 1-unit, else 0."""
    d = x - 1
    if d.vanishes() and d.is_exact():
        return INF
    try:
        v = d.valuation()
    except UndeterminedValuation:
        return 0
    return v if v >= 1 else 0


def fil_level(s: MilnorSym):
    """The largest r certified by shape with s in fil_r K_2(K) (inf for the empty sum)."""
    level = INF
    for _, a, b in s.terms:
        level = min(level, max(_one_unit_level(a), _one_unit_level(b)))
    return level


def in_fil(s: MilnorSym, r: int) -> bool:
    return fil_level(s) >= r


def fil_generators(ctx, r: int, budget: int, rng_seed=0, a_terms=2, pi_span=3):
    """``budget`` random symbols {1 + pi^r a, b}, a in A, b in K^x.

    ``b`` has a t-monomial leading coefficient so inverses stay exact in t.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    rng = random.Random(rng_seed)
    K = ctx.K
    out = []
    for _ in range(budget):
        terms = {}
        for _ in range(a_terms):
            key = (rng.randrange(-3, 4), rng.randrange(0, pi_span))
            terms[key] = ctx.F.element(rng.randrange(ctx.F.q))
        if not any(terms.values()):
            terms[(0, 0)] = ctx.F.one()
        a = ctx.from_terms(terms)
        u = K.one() + a.shift(r)
        b = ctx.random_unit_K(rng, nterms=2)
        out.append(MilnorSym.sym(u, b))
    return out
