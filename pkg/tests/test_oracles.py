"""Frozen values checked against independent oracles."""

import pytest

from twolocal.asw import conductor, level
from twolocal.checks import bruteforce_conductor, oracle_search_space
from twolocal.coeff import get_field
from twolocal.pairing import varpi_window_rank
from twolocal.series import Context
from twolocal.sparse import sparse_ring, to_K
from twolocal.witt import WittVec

# (monomials per component as (t-exp, pi-exp) or None, raw weighted level, conductor)
CONDUCTORS = [
    ([(0, -2)], 2, 1),
    ([(-2, -2), None], 4, 2),
    ([None, (0, -4)], 4, 1),
    ([(1, -1), (0, -2)], 2, 2),
    ([(-1, -2), (1, -3)], 4, 4),
    ([(0, -1), (2, -4)], 4, 2),
    ([(2, -2), (1, -4)], 4, 4),
]


@pytest.mark.parametrize("monos,raw,expected", CONDUCTORS)
def test_conductor_against_translate_search(monos, raw, expected):
    ctx = Context(p=2)
    R = sparse_ring(get_field(2, 1))
    comps = [R.mono(1, *x) if x else R.zero() for x in monos]
    low, high = oracle_search_space(R, len(comps))
    assert bruteforce_conductor(WittVec(R, comps), low, high) == expected
    a = WittVec(ctx.K, [to_K(ctx, x) for x in comps])
    assert level(a) == raw
    assert conductor(a) == expected


def test_varpi_ranks_frozen():
    ctx = Context(p=2)
    assert [varpi_window_rank(ctx, 2, w) for w in range(1, 6)] == [1, 2, 3, 4, 5]
    ctx4 = Context(p=2, e=2)
    assert [varpi_window_rank(ctx4, 2, w) for w in range(1, 4)] == [2, 4, 6]
