import random

import pytest
from hypothesis import assume, given, settings, strategies as st

from twolocal.errors import UndeterminedValuation
from twolocal.forms import in_twist, omega_prime
from twolocal.milnor import MilnorSym, fil_generators, fil_level, in_fil, split_phi, sym_dlog, tame
from twolocal.series import INF, Context


def S(a, b, n=1):
    return MilnorSym.sym(a, b, n)


def test_tame_examples(c3):
    K = c3.K
    u = c3.mono(2, 1, 0) + c3.mono(1, -2, 2)
    assert tame(S(u, K.gen())) == c3.f.from_dict({1: 2})
    v = K.one() + c3.mono(1, 0, 1)
    assert tame(S(u, v)) == c3.f.one()
    c2 = Context(p=2)
    assert tame(S(c2.K.gen(), c2.K.gen())) == c2.f.one()
    assert tame(S(c3.K.gen(), c3.K.gen())) == -c3.f.one()


def test_dlog_examples(c2):
    K = c2.K
    t, pi = K(c2.t()), K.gen()
    assert sym_dlog(S(t, pi)) == omega_prime(K)
    assert sym_dlog(S(pi, pi)).is_zero()
    assert sym_dlog(S(K.one() - t, t)).is_zero()
    assert sym_dlog(MilnorSym(), K).is_zero()


def test_symbol_entries_must_be_nonzero(c2):
    with pytest.raises(UndeterminedValuation):
        S(c2.K.zero(), c2.K.gen())


def test_fil_generators(c2):
    gens = fil_generators(c2, 1, 5, rng_seed=3)
    assert len(gens) == 5
    for s in gens:
        (n, u, b), = s.terms
        assert (u - 1).valuation() >= 1
        assert in_fil(s, 1)
    assert fil_generators(c2, 2, 0) == []
    for s in fil_generators(c2, 2, 8, rng_seed=1):
        assert in_twist(sym_dlog(s), 2)


def test_fil_level(c2):
    K = c2.K
    s = S(K.one() + c2.mono(1, 1, 3), K.gen()) + S(K.one() + c2.mono(1, 0, 2), K(c2.t()))
    assert fil_level(s) == 2
    assert fil_level(MilnorSym()) == INF
    assert fil_level(S(K(c2.t()), K.gen())) == 0


def test_split_phi(c3):
    K = c3.K
    u = c3.mono(2, 1, 0) + c3.mono(1, -2, 2)
    s = split_phi(S(u, K.gen()))
    assert tame(s) == c3.f.one()
    assert len(s) == 2
    v = K.one() + c3.mono(1, 0, 1)
    w = S(u, v)
    rest = split_phi(w)
    assert tame(rest) == c3.f.one()
    assert sym_dlog(rest) == sym_dlog(w)


CTX = {(p, e): Context(p=p, e=e) for p, e in ((2, 1), (2, 2), (3, 1))}
field_st = st.sampled_from(sorted(CTX))


def _units(ctx, seed, k):
    rng = random.Random(seed)
    return [ctx.random_unit_K(rng, nterms=2) for _ in range(k)]


@settings(max_examples=40, deadline=None)
@given(field_st, st.integers(0, 10 ** 6))
def test_dlog_antisymmetric_and_bilinear(key, seed):
    ctx = CTX[key]
    a1, a2, b = _units(ctx, seed, 3)
    assert sym_dlog(S(a1, b)) == -sym_dlog(S(b, a1))
    assert sym_dlog(S(a1 * a2, b)) == sym_dlog(S(a1, b)) + sym_dlog(S(a2, b))
    assert sym_dlog(S(a1, b, 2)) == sym_dlog(S(a1, b) + S(a1, b))


@settings(max_examples=40, deadline=None)
@given(field_st, st.integers(0, 10 ** 6))
def test_steinberg(key, seed):
    ctx = CTX[key]
    a, = _units(ctx, seed, 1)
    one_minus = ctx.K.one() - a
    assume(not one_minus.vanishes())
    s = S(a, one_minus)
    assert sym_dlog(s).is_zero()
    assert tame(s) == ctx.f.one()


@settings(max_examples=40, deadline=None)
@given(field_st, st.integers(0, 10 ** 6))
def test_split_phi_kills_tame(key, seed):
    ctx = CTX[key]
    a, b, c = _units(ctx, seed, 3)
    s = S(a, b) - S(c, a)
    rest = split_phi(s)
    assert tame(rest) == ctx.f.one()
