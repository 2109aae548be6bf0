import itertools

import pytest
from hypothesis import given, strategies as st

from twolocal.coeff import FqPoly, fq_arith, frobenius, get_field, monic_irreducibles, trace
from twolocal.errors import DivisionByZero

FIELDS = [(p, e) for p in (2, 3, 5) for e in (1, 2, 3)]


def test_add_char_two():
    F = get_field(2, 1)
    assert fq_arith(F.one(), F.one(), "add") == F.zero()


def test_g_squared_in_f4():
    F = get_field(2, 2)
    g = F.gen()
    assert fq_arith(g, g, "mul") == g + 1
    assert F.modulus == (1, 1, 1)


def test_div_by_one_is_identity():
    for p, e in FIELDS:
        F = get_field(p, e)
        for x in F.elements():
            assert fq_arith(x, F.one(), "div") == x


def test_div_by_zero():
    F = get_field(3, 1)
    with pytest.raises(DivisionByZero):
        fq_arith(F.one(), F.zero(), "div")
    with pytest.raises(ZeroDivisionError):
        F.zero().inverse()


def test_frobenius_examples():
    F = get_field(2, 2)
    g = F.gen()
    assert frobenius(g, "forward") == g + 1
    assert frobenius(F.one(), "inverse") == F.one()
    F8 = get_field(2, 3)
    for x in F8.elements():
        assert frobenius(frobenius(x, "forward"), "inverse") == x


def test_trace_examples():
    assert trace(get_field(2, 1).one()) == 1
    F4 = get_field(2, 2)
    assert trace(F4.gen()) == 1
    assert trace(F4.one()) == 0


@pytest.mark.parametrize("p,e", FIELDS)
def test_canonical_modulus_is_smallest_irreducible(p, e):
    F = get_field(p, e)
    # lexicographically smallest monic irreducible, low-degree coefficients first
    first = None
    for low in itertools.product(range(p), repeat=e):
        P = FqPoly(get_field(p, 1), list(low) + [1])
        if all(P.gcd(Q).degree == 0 for d in range(1, e // 2 + 1)
               for Q in monic_irreducibles(get_field(p, 1), d)):
            first = tuple(low) + (1,)
            break
    assert F.modulus == first


@pytest.mark.parametrize("p,e", FIELDS)
def test_trace_frobenius_invariant_exhaustive(p, e):
    F = get_field(p, e)
    for a in F.elements():
        assert trace(a ** p) == trace(a)
        assert 0 <= trace(a) < p


@pytest.mark.parametrize("p,e", [(2, 2), (2, 3), (3, 2)])
def test_frobenius_is_automorphism(p, e):
    F = get_field(p, e)
    els = list(F.elements())
    for a in els:
        for b in els:
            assert frobenius(a * b, "forward") == frobenius(a, "forward") * frobenius(b, "forward")
            assert frobenius(a + b, "forward") == frobenius(a, "forward") + frobenius(b, "forward")


def test_rep_digits_in_range():
    for p, e in FIELDS:
        F = get_field(p, e)
        for x in F.elements():
            assert len(x.rep) <= e and all(0 <= d < p for d in x.rep)


def test_bounds_enforced():
    with pytest.raises(ValueError):
        get_field(7, 1)
    with pytest.raises(ValueError):
        get_field(2, 4)


def test_parse_literals():
    F = get_field(2, 2)
    assert F.parse("g+1") == F.gen() + 1
    assert F.parse("0") == F.zero()


@given(st.integers(0, 26), st.integers(0, 26), st.integers(1, 26))
def test_field_axioms_f27(a, b, c):
    F = get_field(3, 3)
    x, y, z = F.element(a), F.element(b), F.element(c)
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    assert (x / z) * z == x


def test_poly_divmod_and_gcd():
    F = get_field(3, 1)
    a = FqPoly(F, [1, 0, 1])  # T^2 + 1, irreducible over F_3
    b = FqPoly(F, [2, 1])
    q, r = divmod(a * b + FqPoly(F, [1]), b)
    assert q == a and r == FqPoly(F, [1])
    assert (a * b).gcd(b * b) == b.monic()
