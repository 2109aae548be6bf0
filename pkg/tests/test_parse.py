import pytest

from twolocal.coeff import FqPoly
from twolocal.forms import LOG, OMEGA, Form2
from twolocal.milnor import sym_dlog
from twolocal.parse import (ParseError, parse_form2, parse_ratfun, parse_series, parse_symbol,
                            parse_witt)
from twolocal.series import format_series


def test_series_terms(c4):
    g = c4.F.gen()
    x = parse_series(c4, "(g+1)*t^-1*pi^2 - 3*t + pi^-1")
    assert x == c4.mono(g + 1, -1, 2) + c4.mono(1, 1, 0) + c4.mono(1, 0, -1)
    assert parse_series(c4, "t^-0*pi^-2") == c4.mono(1, 0, -2)
    assert parse_series(c4, " 2 * t ") == c4.K.zero()


def test_windows(c2):
    x = parse_series(c2, "t + O(pi^3)")
    assert x.hi == 3
    y = parse_series(c2, "t^-1 + O(t^3)*pi^0")
    assert y.coefficient(0).hi == 3
    assert format_series(y) == "t^-1+O(t^3)*pi^0"


def test_round_trip_with_formatter(c4):
    for text in ("pi^-1+(g+1)*t^-1*pi^2", "g*t^-3*pi^-2+t", "1+t*pi+O(pi^5)"):
        assert format_series(parse_series(c4, text)) == text


def test_division_and_powers(c2):
    x = parse_series(c2, "1/(1+t*pi)")
    assert x * parse_series(c2, "1+t*pi") == c2.K.one()
    assert parse_series(c2, "(t*pi)^-2") == c2.mono(1, -2, -2)


def test_f_level(c2):
    b = parse_series(c2, "t^-1 + t^2", level="f")
    assert b == c2.f.from_dict({-1: 1, 2: 1})
    with pytest.raises(ParseError):
        parse_series(c2, "pi", level="f")


def test_witt(c3):
    a = parse_witt(c3, "[t^-1; t*pi; 0]")
    assert a.m == 3 and a.comps[1] == c3.mono(1, 1, 1)
    with pytest.raises(ParseError):
        parse_witt(c3, "t^-1; t")
    with pytest.raises(ParseError):
        parse_witt(c3, "[t;]")


def test_forms(c2):
    a = parse_form2(c2, "t^2*pi^4 * dlog t ^ dlog pi")
    assert a == Form2(c2.mono(1, 2, 4), LOG)
    b = parse_form2(c2, "dt^dpi")
    assert b == Form2(c2.K.one(), OMEGA)
    with pytest.raises(ParseError):
        parse_form2(c2, "t*pi")


def test_symbols(c2):
    s = parse_symbol(c2, "2{t, pi} - {1+t, pi}")
    assert [n for n, _, _ in s.terms] == [2, -1]
    assert sym_dlog(parse_symbol(c2, "{t,pi}")) == Form2(c2.K.one(), LOG)
    for bad in ("{t}", "{t, pi} {t, pi}", "", "{t, pi"):
        with pytest.raises(ParseError):
            parse_symbol(c2, bad)


def test_ratfun(c4):
    F = c4.F
    f = parse_ratfun(F, "(T^2+T)/(T+g)")
    assert f.num == FqPoly(F, [0, 1, 1]) and f.den == FqPoly(F, [F.gen(), 1])
    assert parse_ratfun(F, "T/T").num == FqPoly(F, [1])
    with pytest.raises(ParseError):
        parse_ratfun(F, "T-T")
    with pytest.raises(ParseError):
        parse_ratfun(F, "t+1")


def test_errors(c2):
    for bad in ("t^", "(t", "t pi", "3*", "O(x^2)", "t ^ pi"):
        with pytest.raises(ParseError):
            parse_series(c2, bad)
