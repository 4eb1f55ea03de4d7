from fractions import Fraction as F

import pytest

from contclust import arcs
from contclust import intervals as iv
from contclust.arcs import (
    Arc,
    MINUS,
    PLUS,
    NEG_END,
    POS_END,
    arc_of_interval,
    crossing,
    e_compatible,
    interval_of_arc,
    map_arc,
    mirror_endpoint,
    orient,
    point_end,
    reverse_endpoint,
    segment_end,
)
from contclust.quiver import STRAIGHT_DESCENDING as SD

from conftest import QUIVERS, random_interval

Q5 = QUIVERS["five_marker"]


# -- the four meeting-sign pictures on the straight line ------------------------


def _meeting_arcs(upper_side, lower_side):
    first = Arc(point_end(1, MINUS), point_end(2, upper_side))
    second = Arc(point_end(2, lower_side), point_end(3, PLUS))
    return first, second


@pytest.mark.parametrize(
    "upper,lower,crosses",
    [
        (MINUS, PLUS, False),  # open meets open
        (MINUS, MINUS, True),
        (PLUS, PLUS, True),
        (PLUS, MINUS, True),
    ],
)
def test_straight_meeting_signs(upper, lower, crosses):
    t1, t2 = _meeting_arcs(upper, lower)
    assert crossing(SD, t1, t2) == crosses
    assert crossing(SD, t2, t1) == crosses


# -- the shared-endpoint four-way picture ----------------------------------------


def _shared_point():
    return point_end(F(1, 2), MINUS)  # down-lane point of the five-marker quiver


def test_shared_endpoint_roles():
    p = _shared_point()
    src1 = Arc(p, point_end(F(3, 2), PLUS))  # p is the source (1/2 < 3/2)
    src2 = Arc(p, point_end(F(7, 4), PLUS))
    tgt1 = Arc(point_end(F(-1, 2), PLUS), p)  # p is the target
    tgt2 = Arc(point_end(F(-3, 4), PLUS), p)
    assert crossing(Q5, src1, tgt1)
    assert crossing(Q5, tgt1, src1)
    assert not crossing(Q5, src1, src2)
    assert not crossing(Q5, tgt1, tgt2)


# -- both-spanning arcs (macro rule, case 3) ---------------------------------------


def test_spanning_vs_spanning_cases():
    a = Arc(point_end(F(1, 4), MINUS), point_end(F(-1, 2), MINUS))
    b = Arc(point_end(F(1, 2), MINUS), point_end(F(-3, 4), MINUS))
    c = Arc(point_end(F(1, 2), MINUS), point_end(F(-1, 4), MINUS))
    assert crossing(Q5, a, b)  # a < c and d < b
    assert crossing(Q5, b, a)  # c < a and b < d, seen from the other side
    assert not crossing(Q5, a, c)  # parallel: a < c and b < d


def test_spanning_vs_one_lane_containment():
    span = Arc(point_end(F(1, 2), MINUS), point_end(F(3, 2), PLUS))
    inside = Arc(point_end(F(1, 4), MINUS), point_end(F(3, 4), PLUS))
    outside = Arc(point_end(F(9, 4), MINUS), point_end(F(5, 2), PLUS))
    assert crossing(Q5, span, inside)
    assert not crossing(Q5, span, outside)


def test_opposite_pure_lanes_never_cross():
    down = Arc(point_end(F(1, 4), MINUS), point_end(F(3, 4), PLUS))
    up = Arc(point_end(F(-3, 4), MINUS), point_end(F(-1, 4), PLUS))
    assert not crossing(Q5, down, up)


# -- orientation -------------------------------------------------------------------


def test_orientation_examples():
    # example quiver: a in (-2,-1), b in (1,2) -> the down-lane end is the source
    theta = Arc(point_end(F(-3, 2), MINUS), point_end(F(3, 2), PLUS))
    src, tgt = orient(Q5, theta)
    assert src == point_end(F(-3, 2), MINUS)
    # straight case: real order
    s, t = orient(SD, Arc(point_end(1, MINUS), point_end(2, PLUS)))
    assert s == point_end(1, MINUS)
    # segment against an interior point: the minus side makes the segment the source
    seg = segment_end(0, MINUS)
    s, t = orient(Q5, Arc(seg, point_end(F(1, 2), MINUS)))
    assert s == seg
    s, t = orient(Q5, Arc(segment_end(0, PLUS), point_end(F(1, 2), MINUS)))
    assert s == point_end(F(1, 2), MINUS)


def test_orientation_total_on_valid_arcs(rng):
    for q in QUIVERS.values():
        for _ in range(400):
            m = random_interval(rng)
            a = arc_of_interval(q, m)
            src, tgt = orient(q, a)
            assert {src, tgt} == set(a.endpoints)


# -- the bijection -----------------------------------------------------------------


def test_phi_straight_examples():
    assert arc_of_interval(SD, iv.closed(1, 2)) == Arc(point_end(1, MINUS), point_end(2, PLUS))
    assert arc_of_interval(SD, iv.singleton(2)) == Arc(point_end(2, MINUS), point_end(2, PLUS))
    assert arc_of_interval(SD, iv.whole_line()) == Arc(NEG_END, POS_END)


def test_phi_marked_examples():
    # closed lower endpoint at a marker sits on the segment just above it
    assert arc_of_interval(Q5, iv.closed(0, F(1, 2))).e1 == segment_end(0, MINUS) or \
        arc_of_interval(Q5, iv.closed(0, F(1, 2))).e2 == segment_end(0, MINUS)
    a = arc_of_interval(Q5, iv.whole_line())
    assert set(a.endpoints) == {segment_end(-3, MINUS), segment_end(2, PLUS)}


def test_phi_round_trip_random(rng, any_quiver):
    for _ in range(1500):
        m = random_interval(rng)
        assert interval_of_arc(any_quiver, arc_of_interval(any_quiver, m)) == m


def test_crossing_symmetric_random(rng, any_quiver):
    for _ in range(1500):
        a1 = arc_of_interval(any_quiver, random_interval(rng))
        a2 = arc_of_interval(any_quiver, random_interval(rng))
        assert crossing(any_quiver, a1, a2) == crossing(any_quiver, a2, a1)


def test_e_compatible_matches_oracle_on_grid():
    pts = range(0, 6)
    grid = [iv.whole_line()]
    for a in pts:
        grid.append(iv.singleton(a))
        grid.append(iv.left_ray(a, True))
        grid.append(iv.left_ray(a, False))
        grid.append(iv.right_ray(a, True))
        grid.append(iv.right_ray(a, False))
        for b in pts:
            if a < b:
                for li in (True, False):
                    for ui in (True, False):
                        grid.append(iv.interval(a, li, b, ui))
    for m1 in grid:
        for m2 in grid:
            assert e_compatible(SD, m1, m2) == iv.straight_compat_oracle(m1, m2), (m1, m2)


def test_reverse_and_mirror_preserve_crossing(rng, any_quiver):
    q = any_quiver
    qr, qm = q.reverse(), q.mirror()
    for _ in range(1000):
        m1, m2 = random_interval(rng), random_interval(rng)
        a1, a2 = arc_of_interval(q, m1), arc_of_interval(q, m2)
        c = crossing(q, a1, a2)
        assert crossing(qr, map_arc(reverse_endpoint, q, a1), map_arc(reverse_endpoint, q, a2)) == c
        assert crossing(qm, map_arc(mirror_endpoint, q, a1), map_arc(mirror_endpoint, q, a2)) == c


def test_whole_line_compatible_with_everything_straight(rng):
    # a straight-orientation specialty: the full line is frozen into every
    # compatible set; on marked quivers it has genuine extensions
    for _ in range(400):
        m = random_interval(rng)
        assert e_compatible(SD, iv.whole_line(), m)


def test_self_compatibility(rng, any_quiver):
    for _ in range(200):
        m = random_interval(rng)
        assert e_compatible(any_quiver, m, m)


def test_arc_json_round_trip(rng):
    for q in QUIVERS.values():
        for _ in range(100):
            a = arc_of_interval(q, random_interval(rng))
            assert Arc.from_json_dict(a.to_json_dict()) == a


def _endpoint_universe(q):
    from fractions import Fraction as F

    marker_pos = {m.pos for m in q.markers}
    lo, hi = min(marker_pos) - 2, max(marker_pos) + 2
    out = []
    x = lo
    while x <= hi:
        if x not in marker_pos:
            out.append(point_end(x, MINUS))
            out.append(point_end(x, PLUS))
        x += F(1, 2)
    for n in q.segment_indices:
        out.append(segment_end(n, MINUS))
        out.append(segment_end(n, PLUS))
    return out


@pytest.mark.parametrize("name", ["five_marker", "half_bounded", "one_sink"])
def test_bijection_exhaustive_on_arc_side(name):
    """Every unordered pair of distinct endpoints is an arc, and the
    interval/arc translation round-trips through all of them."""
    q = QUIVERS[name]
    universe = _endpoint_universe(q)
    for i in range(len(universe)):
        for j in range(i + 1, len(universe)):
            a = Arc(universe[i], universe[j])
            m = interval_of_arc(q, a)
            assert arc_of_interval(q, m) == a, (a, m)
            src, tgt = orient(q, a)
            assert {src, tgt} == set(a.endpoints)


def _interval_strategy():
    from hypothesis import strategies as st

    coords = st.fractions(min_value=-12, max_value=12)

    def build(kind, a, delta, li, ui):
        if kind == "singleton":
            return iv.singleton(a)
        if kind == "left":
            return iv.left_ray(a, li)
        if kind == "right":
            return iv.right_ray(a, li)
        if kind == "whole":
            return iv.whole_line()
        b = a + abs(delta)
        if a == b:
            return iv.singleton(a)
        return iv.interval(a, li, b, ui)

    from hypothesis import strategies as st

    return st.builds(
        build,
        st.sampled_from(["finite", "singleton", "left", "right", "whole"]),
        coords,
        coords,
        st.booleans(),
        st.booleans(),
    )


from hypothesis import given

from conftest import QUIVERS as _QS


@given(_interval_strategy())
def test_bijection_property(m):
    for q in _QS.values():
        assert interval_of_arc(q, arc_of_interval(q, m)) == m


def _random_inside(rng, lo, hi):
    from fractions import Fraction as F

    w = hi - lo
    a = lo + w * F(rng.randrange(1, 64), 64)
    b = lo + w * F(rng.randrange(1, 64), 64)
    if a > b:
        a, b = b, a
    if a == b:
        return iv.singleton(a)
    return iv.interval(a, rng.random() < 0.5, b, rng.random() < 0.5)


def _mirror_interval(m):
    return iv.IntervalIndec(-m.upper, m.upper_in, -m.lower, m.lower_in)


def test_locality_single_segment_matches_straight_oracle(rng):
    """Pairs supported inside one quiver segment see a straight orientation:
    descending segments match the oracle directly, ascending ones after a
    mirror flip."""
    from fractions import Fraction as F

    q5 = QUIVERS["five_marker"]
    hb = QUIVERS["half_bounded"]
    cases = [
        (q5, F(0), F(1), "desc"),
        (q5, F(-2), F(-1), "desc"),
        (q5, F(1), F(2), "asc"),
        (q5, F(-1), F(0), "asc"),
        (hb, F(0), F(3), "desc"),
    ]
    for q, lo, hi, kind in cases:
        for _ in range(1200):
            m1, m2 = _random_inside(rng, lo, hi), _random_inside(rng, lo, hi)
            marked = e_compatible(q, m1, m2)
            if kind == "desc":
                assert marked == iv.straight_compat_oracle(m1, m2), (q, m1, m2)
            else:
                assert marked == iv.straight_compat_oracle(
                    _mirror_interval(m1), _mirror_interval(m2)
                ), (q, m1, m2)
