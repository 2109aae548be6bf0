import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from twolocal.coeff import get_field
from twolocal.errors import LengthMismatch
from twolocal.series import Context
from twolocal.witt import (ZZ, WittVec, ghost_components, one_vec, witt_arith, witt_F, witt_R,
                           witt_teich, witt_V, zero_vec)


def _w(F, *xs):
    return WittVec(F, [F(x) for x in xs])


def _teich_int(x, p, m):
    """Teichmueller lift of x in F_p to Z/p^m."""
    mod = p ** m
    y = x % p
    for _ in range(m + 1):
        y = pow(y, p, mod)
    return y


def _as_int(v: WittVec, p):
    # over F_p the Frobenius is trivial, so V is multiplication by p
    m = v.m
    return sum(p ** i * _teich_int(int(c.v), p, m) for i, c in enumerate(v.comps)) % p ** m


def test_one_plus_one_in_w2_f2():
    F = get_field(2, 1)
    assert witt_arith(_w(F, 1, 0), _w(F, 1, 0), "add") == _w(F, 0, 1)


def test_one_is_multiplicative_identity():
    F = get_field(3, 1)
    for xs in itertools.product(range(3), repeat=2):
        x = _w(F, *xs)
        assert witt_arith(_w(F, 1, 0), x, "mul") == x


def test_w2_f3_sum_frozen():
    # ghost oracle over Z and the identification W_2(F_3) = Z/9 both give (2, 0):
    # (1,1) is 1 + 3 = 4, and 4 + 4 = 8 is the Teichmueller lift of 2
    F = get_field(3, 1)
    s = witt_arith(_w(F, 1, 1), _w(F, 1, 1), "add")
    assert s == _w(F, 2, 0)
    assert _as_int(s, 3) == 8


@pytest.mark.parametrize("p,m", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3)])
def test_w_fp_is_z_mod_pm(p, m):
    F = get_field(p, 1)
    vecs = [WittVec(F, [F(x) for x in xs]) for xs in itertools.product(range(p), repeat=m)]
    for a in vecs:
        for b in vecs:
            assert _as_int(a + b, p) == (_as_int(a, p) + _as_int(b, p)) % p ** m
            assert _as_int(a * b, p) == (_as_int(a, p) * _as_int(b, p)) % p ** m
            assert _as_int(a - b, p) == (_as_int(a, p) - _as_int(b, p)) % p ** m


def test_frobenius_examples():
    ctx = Context(p=2)
    K = ctx.K
    a = WittVec(K, [K(ctx.t(-1)), K(ctx.t(1))])
    assert witt_F(a) == WittVec(K, [K(ctx.t(-2)), K(ctx.t(2))])
    assert witt_F(one_vec(K, 3)) == one_vec(K, 3)
    F4 = get_field(2, 2)
    assert witt_F(WittVec(F4, [F4.gen()])) == WittVec(F4, [F4.gen() + 1])


def test_verschiebung_examples():
    F = get_field(2, 1)
    v = witt_V(_w(F, 1))
    assert v == _w(F, 0, 1)
    assert v == _w(F, 1, 0) + _w(F, 1, 0)
    assert witt_V(zero_vec(F, 2)) == zero_vec(F, 3)
    ctx = Context(p=3)
    a = WittVec(ctx.K, [ctx.mono(1, 1, -1)])
    assert witt_F(witt_V(a)).restrict() == zero_vec(ctx.K, 1)


def test_restriction_examples():
    F = get_field(2, 1)
    assert witt_R(_w(F, 1, 1)) == _w(F, 1)
    assert witt_R(_w(F, 1, 0, 1)) == _w(F, 1, 0)
    with pytest.raises(LengthMismatch):
        witt_R(_w(F, 1))


def test_teichmuller():
    ctx = Context(p=2)
    K = ctx.K
    assert witt_teich(K.one(), 3) == one_vec(K, 3)
    t, pi = K(ctx.t()), K.gen()
    assert witt_teich(t, 2) * witt_teich(pi, 2) == witt_teich(t * pi, 2)


@pytest.mark.parametrize("p", [2, 3])
def test_teichmuller_scaling_rule(p):
    ctx = Context(p=p)
    rng = random.Random(p)
    for _ in range(10):
        f = ctx.random_unit_K(rng)
        a = WittVec(ctx.K, [ctx.random_K(rng) for _ in range(3)])
        prod = witt_teich(f, 3) * a
        assert prod == WittVec(ctx.K, [f ** (p ** i) * a.comps[i] for i in range(3)])


def test_length_mismatch():
    F = get_field(2, 1)
    with pytest.raises(LengthMismatch):
        _w(F, 1) + _w(F, 1, 0)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([2, 3]), st.integers(1, 3),
       st.lists(st.integers(-30, 30), min_size=6, max_size=6))
def test_ghost_map_is_ring_homomorphism(p, m, xs):
    a, b = WittVec(ZZ, xs[:m]), WittVec(ZZ, xs[3:3 + m])
    ga, gb = ghost_components(a.comps, p), ghost_components(b.comps, p)
    assert a.add(b, p).ghost(p) == [x + y for x, y in zip(ga, gb)]
    assert a.mul(b, p).ghost(p) == [x * y for x, y in zip(ga, gb)]


CTX = {p: Context(p=p) for p in (2, 3)}


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3]), st.integers(0, 10 ** 6))
def test_char_p_identities(p, seed):
    ctx = CTX[p]
    rng = random.Random(seed)
    K = ctx.K
    x = WittVec(K, [ctx.random_K(rng, nterms=2)])
    y = WittVec(K, [ctx.random_K(rng, nterms=2) for _ in range(2)])
    # V(x) y = V(x F(y)) in W_2, with F(y) restricted to length 1
    assert x.verschiebung() * y == (x * y.frobenius().restrict()).verschiebung()
    # F V = p (V lengthens by one, so compare after R)
    z = WittVec(K, [ctx.random_K(rng, nterms=2) for _ in range(2)])
    assert z.verschiebung().frobenius().restrict() == z.times_int(p)
    # R V = V R
    w = WittVec(K, [ctx.random_K(rng, nterms=2) for _ in range(3)])
    assert w.verschiebung().restrict() == w.restrict().verschiebung()
    # F is additive and multiplicative
    assert (z + y).frobenius() == z.frobenius() + y.frobenius()
    assert (z * y).frobenius() == z.frobenius() * y.frobenius()
