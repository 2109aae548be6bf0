"""Exact sparse Laurent polynomials in t and pi over F_q.

A light ring used by brute-force oracles and exhaustive checks: elements are
finite sums, so there are no windows to track and arithmetic is cheap.
It implements the same small ring protocol the Witt code relies on.
"""

from __future__ import annotations

from .coeff import FiniteField


class SparseRing:
    def __init__(self, field: FiniteField):
        self.field = field
        self.characteristic = field.characteristic
        self._zero = SparseLP(self, {})
        self._one = SparseLP(self, {(0, 0): field.one()})

    def zero(self):
        return self._zero

    def one(self):
        return self._one

    def from_int(self, n):
        c = self.field(n)
        return SparseLP(self, {(0, 0): c}) if c else self._zero

    __call__ = from_int

    def mono(self, c, i, j):
        c = self.field(c)
        return SparseLP(self, {(i, j): c}) if c else self._zero


class SparseLP:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: SparseRing, terms):
        self.ring = ring
        self.terms = terms

    def _lift(self, other):
        if isinstance(other, SparseLP):
            return other
        return self.ring.from_int(other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out[k] + c if k in out else c
            if v:
                out[k] = v
            else:
                del out[k]
        return SparseLP(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return SparseLP(self.ring, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            c = self.ring.field(other)
            if not c:
                return self.ring.zero()
            return SparseLP(self.ring, {k: v * c for k, v in self.terms.items()})
        other = self._lift(other)
        out = {}
        for (a, b), x in self.terms.items():
            for (c, d), y in other.terms.items():
                k = (a + c, b + d)
                v = out[k] + x * y if k in out else x * y
                if v:
                    out[k] = v
                else:
                    del out[k]
        return SparseLP(self.ring, out)

    __rmul__ = __mul__

    def frobenius(self):
        p = self.ring.characteristic
        return SparseLP(self.ring, {(p * a, p * b): c.frobenius()
                                    for (a, b), c in self.terms.items()})

    def is_exact_zero(self):
        return not self.terms

    def pole(self) -> int:
        """max(0, -v_pi)."""
        return max([0] + [-b for (_, b) in self.terms])

    def __eq__(self, other):
        other = self._lift(other)
        return self.terms == other.terms

    __hash__ = None

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (i, j), c in sorted(self.terms.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            s = []
            if str(c) != "1" or (i == 0 and j == 0):
                s.append(f"({c})" if "+" in str(c) else str(c))
            if i:
                s.append("t" if i == 1 else f"t^{i}")
            if j:
                s.append("pi" if j == 1 else f"pi^{j}")
            parts.append("*".join(s))
        return "+".join(parts)


def from_K(ctx, x) -> SparseLP:
    """Convert an exact K-element to a sparse polynomial."""
    ring = sparse_ring(ctx.F)
    return SparseLP(ring, {k: c for k, c in ctx.terms_of(x).items() if c})


def to_K(ctx, x: SparseLP):
    return ctx.from_terms(x.terms)


_rings = {}


def sparse_ring(field: FiniteField) -> SparseRing:
    key = (field.p, field.e)
    if key not in _rings:
        _rings[key] = SparseRing(field)
    return _rings[key]
