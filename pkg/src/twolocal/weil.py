"""Tame symbols on P^1 over F_q and the Weil reciprocity product."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .coeff import FiniteField, FqElem, FqPoly, monic_irreducibles
from .errors import DivisionByZero, FactorizationBudgetExceeded

MAX_PLACE_DEGREE = 6


class RatFun:
    """num/den in F_q(T), den monic, in lowest terms."""

    __slots__ = ("num", "den")

    def __init__(self, num: FqPoly, den: Optional[FqPoly] = None):
        F = num.field
        den = den if den is not None else FqPoly(F, [1])
        if den.is_zero():
            raise DivisionByZero("rational function with zero denominator")
        g = num.gcd(den) if not num.is_zero() else den.monic()
        num, den = num // g, den // g
        lc = den.lc()
        self.num = FqPoly(F, [c / lc for c in num.c])
        self.den = den.monic()

    @property
    def field(self) -> FiniteField:
        return self.num.field

    def __add__(self, other):
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self):
        return RatFun(-self.num, self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return RatFun(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if other.num.is_zero():
            raise DivisionByZero("division by the zero function")
        return RatFun(self.num * other.den, self.den * other.num)

    def __eq__(self, other):
        return self.num == other.num and self.den == other.den

    __hash__ = None

    def __str__(self):
        if self.den.degree == 0:
            return f"{self.num}"
        return f"({self.num})/({self.den})"


@dataclass(frozen=True)
class Place:
    poly: Optional[FqPoly]  # None for infinity

    @property
    def kind(self) -> str:
        return "infinity" if self.poly is None else "finite"

    @property
    def degree(self) -> int:
        return 1 if self.poly is None else self.poly.degree

    def __str__(self):
        return "inf" if self.poly is None else f"({self.poly})"


INFINITY = Place(None)


def factor(f: FqPoly):
    """Monic irreducible factorization {P: multiplicity} by trial division."""
    if f.is_zero():
        raise ValueError("cannot factor 0")
    out = {}
    r = f.monic()
    d = 1
    while r.degree >= 2 * d:
        if d > MAX_PLACE_DEGREE:
            break
        for P in monic_irreducibles(f.field, d):
            while True:
                q, rem = divmod(r, P)
                if not rem.is_zero():
                    break
                out[P] = out.get(P, 0) + 1
                r = q
        d += 1
    if r.degree >= 1:
        # no factor of degree <= deg(r)/2 was found, so r is irreducible
        if r.degree > MAX_PLACE_DEGREE or r.degree >= 2 * d:
            raise FactorizationBudgetExceeded(
                f"irreducible factor of degree {r.degree} exceeds the budget {MAX_PLACE_DEGREE}")
        out[r] = out.get(r, 0) + 1
    return out


def places_of(f: RatFun, g: RatFun):
    """Support of f and g plus infinity, finite places sorted by (degree, coefficients)."""
    seen = {}
    for h in (f, g):
        for part in (h.num, h.den):
            if part.degree >= 1:
                for P in factor(part):
                    seen[P] = True
    fin = sorted(seen, key=lambda P: (P.degree, [c.v for c in reversed(P.c)]))
    return [Place(P) for P in fin] + [INFINITY]


class ResidueField:
    """k(x) = F_q[T]/(P) with polynomial representatives."""

    def __init__(self, P: FqPoly):
        self.P = P
        self.field = P.field
        self.q = P.field.q
        self.degree = P.degree

    def reduce(self, a: FqPoly) -> FqPoly:
        return a % self.P

    def mul(self, a, b):
        return (a * b) % self.P

    def pow(self, a, n):
        if n < 0:
            return self.pow(self.inverse(a), -n)
        result, base = FqPoly(self.field, [1]), a % self.P
        while n:
            if n & 1:
                result = (result * base) % self.P
            base = (base * base) % self.P
            n >>= 1
        return result

    def inverse(self, a):
        a = a % self.P
        if a.is_zero():
            raise DivisionByZero("inverse of 0 in a residue field")
        return self.pow(a, self.q ** self.degree - 2)

    def frob(self, a, k=1):
        return self.pow(a, self.q ** k)

    def norm_to(self, a, sub_degree: int):
        """Norm to the subfield of degree ``sub_degree`` (product of conjugates)."""
        if self.degree % sub_degree:
            raise ValueError("not a subfield degree")
        result = FqPoly(self.field, [1])
        conj = a % self.P
        for _ in range(self.degree // sub_degree):
            result = self.mul(result, conj)
            conj = self.frob(conj, sub_degree)
        return result

    def norm(self, a) -> FqElem:
        n = self.norm_to(a, 1)
        if n.degree > 0:
            raise ArithmeticError("norm did not land in F_q")
        return n.c[0] if n.c else self.field.zero()


def _val_unit(h: RatFun, x: Place, k: Optional[ResidueField]):
    """(v_x(h), unit part of h evaluated in k(x))."""
    if x.poly is None:
        v = h.den.degree - h.num.degree
        return v, h.num.lc() / h.den.lc()
    num, den = h.num, h.den
    v = 0
    while True:
        q, r = divmod(num, x.poly)
        if not r.is_zero():
            break
        num, v = q, v + 1
    while True:
        q, r = divmod(den, x.poly)
        if not r.is_zero():
            break
        den, v = q, v - 1
    return v, k.mul(k.reduce(num), k.inverse(den))


def tame_at(f: RatFun, g: RatFun, x: Place):
    """(-1)^(v(f)v(g)) f^v(g) / g^v(f) in k(x); an FqElem at infinity, else an FqPoly mod P."""
    if x.poly is None:
        vf, uf = _val_unit(f, x, None)
        vg, ug = _val_unit(g, x, None)
        val = uf ** vg * ug ** (-vf)
        return -val if (vf * vg) % 2 else val
    k = ResidueField(x.poly)
    vf, uf = _val_unit(f, x, k)
    vg, ug = _val_unit(g, x, k)
    val = k.mul(k.pow(uf, vg), k.pow(ug, -vf))
    return k.reduce(-val) if (vf * vg) % 2 else val


def weil_check(f: RatFun, g: RatFun):
    """Return (product == 1, certificate rows (place, degree, tame value, norm))."""
    F = f.field
    prod = F.one()
    cert = []
    for x in places_of(f, g):
        val = tame_at(f, g, x)
        if x.poly is None:
            nm = val
        else:
            nm = ResidueField(x.poly).norm(val)
        prod = prod * nm
        cert.append((str(x), x.degree, str(val), str(nm)))
    return prod == F.one(), cert


def random_ratfun(F: FiniteField, rng: random.Random, max_deg=4) -> RatFun:
    def poly(monic):
        d = rng.randrange(0, max_deg + 1)
        cs = [F.element(rng.randrange(F.q)) for _ in range(d)]
        lead = F.one() if monic else F.element(rng.randrange(1, F.q))
        return FqPoly(F, cs + [lead])
    num = poly(False)
    return RatFun(num, poly(True))
