import itertools

from hypothesis import given
from hypothesis import strategies as st

from galois2 import gf2


def span(rows):
    out = {0}
    for r in rows:
        out |= {x ^ r for x in out}
    return out


@given(st.lists(st.integers(0, 255), max_size=8))
def test_rank_is_log_of_span(rows):
    assert 1 << gf2.rank(rows) == len(span(rows))


@given(st.lists(st.integers(0, 63), max_size=5), st.integers(0, 63))
def test_solve_against_brute_force(cols, target):
    x = gf2.solve(cols, target)
    hits = [
        bits
        for bits in itertools.product((0, 1), repeat=len(cols))
        if _combine(cols, bits) == target
    ]
    if x is None:
        assert not hits
    else:
        assert _combine(cols, x) == target


def _combine(cols, bits):
    acc = 0
    for c, b in zip(cols, bits):
        if b:
            acc ^= c
    return acc


def test_bits_round_trip():
    assert gf2.int_to_bits(gf2.bits_to_int([1, 0, 1, 1]), 4) == [1, 0, 1, 1]


def test_inverse():
    a = [[1, 1, 0], [0, 1, 1], [0, 0, 1]]
    inv = gf2.inverse(a)
    assert gf2.matmul(a, inv) == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def test_inverse_singular():
    import pytest

    with pytest.raises(ValueError):
        gf2.inverse([[1, 1], [1, 1]])
