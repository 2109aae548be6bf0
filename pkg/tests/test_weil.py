import random

import pytest
from hypothesis import given, settings, strategies as st

from twolocal.coeff import FqPoly, get_field, monic_irreducibles
from twolocal.errors import DivisionByZero, FactorizationBudgetExceeded
from twolocal.parse import parse_ratfun
from twolocal.weil import (INFINITY, Place, RatFun, ResidueField, factor, places_of,
                           random_ratfun, tame_at, weil_check)


def R(F, text):
    return parse_ratfun(F, text)


def test_places_examples():
    F = get_field(2, 1)
    T = FqPoly(F, [0, 1])
    places = places_of(R(F, "T"), R(F, "1-T"))
    assert places == [Place(T), Place(T + FqPoly(F, [1])), INFINITY]
    assert places_of(R(F, "1"), R(F, "1")) == [INFINITY]
    assert places_of(R(F, "T^2"), R(F, "T^2")) == [Place(T), INFINITY]


def test_tame_examples():
    for p in (2, 3, 5):
        F = get_field(p, 1)
        T = Place(FqPoly(F, [0, 1]))
        assert tame_at(R(F, "T"), R(F, "T"), T) == FqPoly(F, [-1])
        assert tame_at(R(F, "T"), R(F, "1-T"), T) == FqPoly(F, [1])
        # both units at (T)
        assert tame_at(R(F, "1+T"), R(F, "1+T^2"), T) == FqPoly(F, [1])


def test_tame_at_infinity():
    F = get_field(3, 1)
    # v_inf(T) = -1, unit part 1: (-1)^1 * 1 = -1
    assert tame_at(R(F, "T"), R(F, "T"), INFINITY) == F(-1)


def test_weil_examples():
    F3, F2 = get_field(3, 1), get_field(2, 1)
    ok, cert = weil_check(R(F3, "T"), R(F3, "1-T"))
    assert ok and all(row[3] == "1" for row in cert)
    ok, _ = weil_check(R(F2, "T"), R(F2, "T"))
    assert ok
    ok, cert = weil_check(R(F2, "T^2+T"), R(F2, "T+1"))
    assert ok
    assert [row[0] for row in cert] == ["(T)", "(T+1)", "inf"]


def test_weil_nontrivial_certificate():
    F = get_field(3, 1)
    ok, cert = weil_check(R(F, "T^2+1"), R(F, "T+1"))
    assert ok
    assert any(row[3] != "1" for row in cert)
    assert any(row[1] == 2 for row in cert)


def test_factor_and_budget():
    F = get_field(2, 1)
    T = FqPoly(F, [0, 1])
    one = FqPoly(F, [1])
    assert factor((T + one) ** 3 * T) == {T + one: 3, T: 1}
    P7 = next(iter(monic_irreducibles(F, 7)))
    with pytest.raises(FactorizationBudgetExceeded):
        factor(P7)
    with pytest.raises(DivisionByZero):
        RatFun(T, FqPoly(F, []))


@pytest.mark.parametrize("p,e", [(2, 1), (2, 2), (3, 1)])
def test_norm_transitivity(p, e):
    F = get_field(p, e)
    rng = random.Random(p * 10 + e)
    for d in (4, 6):
        P = next(iter(monic_irreducibles(F, d)))
        k = ResidueField(P)
        for _ in range(5):
            a = FqPoly(F, [F.element(rng.randrange(F.q)) for _ in range(d)])
            if (a % P).is_zero():
                continue
            direct = k.norm(a)
            for sub in (1, 2, d // 2, d):
                mid = k.norm_to(a, sub)
                # the intermediate norm lies in the subfield; finish the tower
                rest = mid
                acc = FqPoly(F, [1])
                for _ in range(sub):
                    acc = k.mul(acc, rest)
                    rest = k.frob(rest)
                assert acc == FqPoly(F, [direct])


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(2, 1), (3, 1), (2, 2)]), st.integers(0, 10 ** 6))
def test_weil_random(pe, seed):
    F = get_field(*pe)
    rng = random.Random(seed)
    ok, _ = weil_check(random_ratfun(F, rng), random_ratfun(F, rng))
    assert ok
