from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from contclust.numbers import NEG_INF, POS_INF, Ext, as_ext
from contclust.quiver import (
    Kind,
    QuiverTypeA,
    STRAIGHT_DESCENDING as SD,
    quiver_from_positions,
)

from conftest import QUIVERS

Q5 = QUIVERS["five_marker"]


def test_marker_validation():
    with pytest.raises(ValueError):
        quiver_from_positions([0, 1], [])  # kinds must alternate
    with pytest.raises(ValueError):
        quiver_from_positions([0], [0])  # positions strictly increase


def test_indexing_parity_and_zero():
    for q in QUIVERS.values():
        indices = list(range(q.neg_inf_index, q.pos_inf_index + 1))
        assert indices[0] <= 0 <= indices[-1]
        for k, m in enumerate(q.markers):
            n = q.index0 + k
            expected = Kind.SINK if n % 2 == 0 else Kind.SOURCE
            assert m.kind is expected
        assert [q.index0 + k for k in range(len(q.markers))] == indices[1:-1]


def test_five_marker_indices_match_convention():
    assert Q5.index0 == -2
    assert Q5.neg_inf_index == -3 and Q5.pos_inf_index == 3
    assert Q5.marker_position(0) == Ext(0)
    assert Q5.marker_position(1) == Ext(1)


def test_segment_of_examples():
    assert Q5.segment_of(F(1, 2)) == ("segment", 0)
    assert Q5.segment_of(1) == ("marker", 1)
    assert Q5.segment_of(-5) == ("segment", -3)
    assert Q5.segment_of(NEG_INF) == ("marker", -3)


def test_precede_examples():
    assert SD.precede(1, 2)
    assert not SD.precede(2, 1)
    assert Q5.precede(F(1, 4), F(3, 4))
    assert not Q5.precede(F(3, 4), F(1, 4))


def test_precede_straight_is_leq(rng):
    for _ in range(300):
        y = F(rng.randrange(-40, 40), rng.choice([1, 2, 4]))
        x = F(rng.randrange(-40, 40), rng.choice([1, 2, 4]))
        assert SD.precede(y, x) == (y <= x)
    assert SD.precede(NEG_INF, 0)
    assert SD.precede(0, POS_INF)


@given(
    st.sampled_from(sorted(QUIVERS)),
    st.lists(st.fractions(min_value=-8, max_value=8), min_size=3, max_size=3),
)
def test_precede_is_a_partial_order(name, pts):
    q = QUIVERS[name]
    x, y, z = (as_ext(p) for p in pts)
    assert q.precede(x, x)
    if q.precede(x, y) and q.precede(y, x):
        assert x == y
    if q.precede(x, y) and q.precede(y, z):
        assert q.precede(x, z)


def test_reverse_and_mirror_are_involutions():
    for q in QUIVERS.values():
        assert q.reverse().reverse() == q
        assert q.mirror().mirror() == q


def test_reverse_swaps_kinds():
    one = quiver_from_positions([0], [])
    assert one.reverse().markers[0].kind is Kind.SOURCE


def test_mirror_examples():
    assert Q5.mirror() == Q5  # symmetric instance
    hb = QUIVERS["half_bounded"]
    m = hb.mirror()
    assert [(mk.pos, mk.kind.value) for mk in m.markers] == [
        (F(-3), "source"),
        (F(0), "sink"),
    ]


def test_json_round_trip():
    for q in QUIVERS.values():
        assert QuiverTypeA.from_json(q.to_json()) == q
