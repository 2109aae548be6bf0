"""Ramification filtration on W_m(K), Artin-Schreier-Witt reduction, conductors.

For a = (w_0, ..., w_{m-1}) the weighted level is
max_i p^(m-1-i) * max(0, -v_pi(w_i)); a lies in fil_n exactly when the level
is at most n. Reduction adds (1 - F)-translates to remove polar monomials
c t^i pi^-j with p | i and p | j; the conductor is the level of the result.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import LengthMismatch, PrecisionLoss, UndeterminedValuation
from .series import INF, LaurentElt
from .sparse import SparseLP
from .witt import PolyRingModP, WittVec, zero_vec


def pole_order(x, err=PrecisionLoss) -> int:
    """max(0, -v_pi(x)), certified from the polar part alone."""
    if isinstance(x, SparseLP):
        return x.pole()
    if isinstance(x, int):
        return 0
    if not isinstance(x, LaurentElt):
        return 0
    if not x.zero_below:
        raise err("coefficients below the pi-window are unknown")
    uncertain = False
    for k in sorted(x.coeffs):
        if k >= 0:
            break
        c = x.coeffs[k]
        if c.vanishes():
            uncertain = True
            continue
        if uncertain:
            raise err(f"pole order hidden by an uncertain coefficient below pi^{k}")
        return -k
    if uncertain or x.hi < 0:
        raise err("the window cannot certify the polar part")
    return 0


def level(a: WittVec, err=UndeterminedValuation) -> int:
    p, m = a.p, a.m
    return max(p ** (m - 1 - i) * pole_order(w, err) for i, w in enumerate(a.comps))


def fil_member(a: WittVec, n: int) -> bool:
    if n < 0:
        raise ValueError("n must be >= 0")
    return level(a) <= n


def one_minus_F(b: WittVec) -> WittVec:
    return b - b.frobenius()


def _teich_at(ring, x, k, m):
    """V^k [x] as a length-m vector."""
    comps = [ring.zero()] * m
    comps[k] = x
    return WittVec(ring, comps)


def _check_polar_exact(w):
    if not isinstance(w, LaurentElt):
        return
    if not w.zero_below or w.hi <= 0:
        raise PrecisionLoss("the polar part of a component is not fully known")
    for k, c in w.coeffs.items():
        if k < 0 and isinstance(c, LaurentElt) and (c.hi != INF or not c.zero_below):
            raise PrecisionLoss(f"t-coefficient of pi^{k} is only known to a window")


def _reducible_terms(w, p):
    """Polar monomials (i, j, c) of a component with p | i and p | j, j < 0."""
    out = []
    if isinstance(w, SparseLP):
        for (i, j), c in w.terms.items():
            if j < 0 and i % p == 0 and j % p == 0:
                out.append((i, j, c))
        return out
    for j, f in w.coeffs.items():
        if j >= 0 or j % p:
            continue
        for i, c in f.coeffs.items():
            if i % p == 0:
                out.append((i, j, c))
    return out


def _monomial(ring, c, i, j):
    if isinstance(ring, type(None)):
        raise TypeError
    if hasattr(ring, "mono"):
        return ring.mono(c, i, j)
    f = ring.base
    return ring.monomial(f.monomial(c, i), j)


def asw_reduce(a: WittVec):
    """Return (a_red, b) with a_red = a - (1 - F)(b) and no reducible polar monomials."""
    ring, p, m = a.ring, a.p, a.m
    b = zero_vec(ring, m)
    cur = a
    for k in range(m):
        while True:
            _check_polar_exact(cur.comps[k])
            terms = _reducible_terms(cur.comps[k], p)
            if not terms:
                break
            i, j, c = min(terms, key=lambda t: (t[1], t[0]))
            beta = _monomial(ring, c.frobenius_inverse(), i // p, j // p)
            shift = _teich_at(ring, beta, k, m)
            cur = cur + one_minus_F(shift)
            b = b - shift
    for w in cur.comps:
        _check_polar_exact(w)
    return cur, b


def conductor(a: WittVec) -> int:
    red, _ = asw_reduce(a)
    return level(red, PrecisionLoss)


@dataclass
class CharacterRep:
    """A Witt vector standing for its Artin-Schreier-Witt class."""

    rep: WittVec
    reduced: bool = False

    @property
    def m(self) -> int:
        return self.rep.m

    @classmethod
    def normalized(cls, a: WittVec) -> "CharacterRep":
        return cls(asw_reduce(a)[0], True)

    def conductor(self) -> int:
        return level(self.rep, PrecisionLoss) if self.reduced else conductor(self.rep)


def level_maps(a: WittVec, which: str, m: int = 2) -> WittVec:
    """lift: W_1 -> W_m by V^(m-1); restrict: W_m -> W_(m-1) by R."""
    if which == "lift":
        if a.m != 1:
            raise LengthMismatch("lift expects a length-1 vector")
        return WittVec(a.ring, [a.ring.zero()] * (m - 1) + [a.comps[0]])
    if which == "restrict":
        if a.m < 2:
            raise LengthMismatch("restrict expects length >= 2")
        return a.restrict()
    raise ValueError(f"unknown map {which!r}")


# -- symbolic (1 - F) for exhaustive monomial checks ------------------------

_OMF_CACHE = {}


def one_minus_F_polys(p: int, m: int):
    """Components of (1 - F)(X_0, ..., X_{m-1}) as polynomials over F_p.

    Returned as a list of dicts {exponent tuple: coefficient in 1..p-1}.
    """
    key = (p, m)
    if key not in _OMF_CACHE:
        R = PolyRingModP(p, m)
        X = WittVec(R, [R.var(i) for i in range(m)])
        _OMF_CACHE[key] = [dict(c.terms) for c in one_minus_F(X).comps]
    return _OMF_CACHE[key]
