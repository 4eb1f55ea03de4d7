"""Arc diagrams for interval indecomposables.

For the straight orientations every real number carries two endpoint slots
(x,-) < (x,+) on one totally ordered line of endpoints.  With at least one
marker the endpoints split into two lanes: points interior to descending
segments plus whole ascending segments form the down lane, and dually for the
up lane.  Each lane is totally ordered; arcs are unordered pairs of distinct
endpoints, every arc has a derived source/target orientation, and crossing is
decided by the four rules dispatched in `crossing`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .intervals import IntervalIndec
from .numbers import NEG_INF, POS_INF, Ext
from .quiver import QuiverTypeA

MINUS = -1
PLUS = 1

DOWN = "down"
UP = "up"


class UnorientableArcError(RuntimeError):
    """Raised only on invalid arcs; orientation is total on valid ones."""


class InvalidIntervalError(ValueError):
    pass


@dataclass(frozen=True)
class Endpoint:
    kind: str  # "point" | "segment" | "neg_inf" | "pos_inf"
    x: Optional[Fraction] = None
    seg: Optional[int] = None
    side: int = 0

    def token(self):
        """Canonical sortable token (ordering is only for determinism)."""
        if self.kind == "neg_inf":
            return (0, Fraction(0), 0, 0)
        if self.kind == "point":
            return (1, self.x, 0, self.side)
        if self.kind == "segment":
            return (2, Fraction(self.seg), 0, self.side)
        return (3, Fraction(0), 0, 0)

    def to_json_dict(self) -> dict:
        if self.kind == "point":
            return {"kind": "point", "x": str(self.x), "side": "-" if self.side == MINUS else "+"}
        if self.kind == "segment":
            return {"kind": "segment", "n": self.seg, "side": "-" if self.side == MINUS else "+"}
        return {"kind": self.kind}

    @staticmethod
    def from_json_dict(d: dict) -> "Endpoint":
        kind = d["kind"]
        if kind == "point":
            return point_end(Fraction(d["x"]), MINUS if d["side"] == "-" else PLUS)
        if kind == "segment":
            return segment_end(int(d["n"]), MINUS if d["side"] == "-" else PLUS)
        if kind == "neg_inf":
            return NEG_END
        if kind == "pos_inf":
            return POS_END
        raise ValueError(f"unknown endpoint kind {kind!r}")

    def __str__(self) -> str:
        if self.kind == "point":
            return f"({self.x},{'-' if self.side == MINUS else '+'})"
        if self.kind == "segment":
            return f"(|s{self.seg}|,{'-' if self.side == MINUS else '+'})"
        return "-inf" if self.kind == "neg_inf" else "+inf"


def point_end(x, side: int) -> Endpoint:
    if side not in (MINUS, PLUS):
        raise ValueError("side must be -1 or +1")
    return Endpoint("point", x=Fraction(x), side=side)


def segment_end(n: int, side: int) -> Endpoint:
    if side not in (MINUS, PLUS):
        raise ValueError("side must be -1 or +1")
    return Endpoint("segment", seg=n, side=side)


# The straight line of endpoints reads -inf as (-inf,+), +inf as (+inf,-).
NEG_END = Endpoint("neg_inf", side=PLUS)
POS_END = Endpoint("pos_inf", side=MINUS)


@dataclass(frozen=True)
class Arc:
    e1: Endpoint
    e2: Endpoint

    def __post_init__(self):
        if self.e1 == self.e2:
            raise ValueError("arc endpoints must be distinct")
        if self.e2.token() < self.e1.token():
            first, second = self.e2, self.e1
            object.__setattr__(self, "e1", first)
            object.__setattr__(self, "e2", second)

    @property
    def endpoints(self) -> tuple[Endpoint, Endpoint]:
        return (self.e1, self.e2)

    def other(self, e: Endpoint) -> Endpoint:
        return self.e2 if e == self.e1 else self.e1

    def to_json_dict(self) -> dict:
        return {"e1": self.e1.to_json_dict(), "e2": self.e2.to_json_dict()}

    @staticmethod
    def from_json_dict(d: dict) -> "Arc":
        return Arc(Endpoint.from_json_dict(d["e1"]), Endpoint.from_json_dict(d["e2"]))

    def __str__(self) -> str:
        return f"{{{self.e1},{self.e2}}}"


def arc(a: Endpoint, b: Endpoint) -> Arc:
    return Arc(a, b)


# -- validity and lanes -----------------------------------------------------


def validate_endpoint(q: QuiverTypeA, e: Endpoint) -> None:
    if q.is_straight:
        if e.kind == "segment":
            raise ValueError("segment endpoints need at least one marker")
        if e.kind == "point" and e.side not in (MINUS, PLUS):
            raise ValueError("bad side")
        return
    if e.kind in ("neg_inf", "pos_inf"):
        raise ValueError("infinity symbols only exist in the straight model")
    if e.kind == "point":
        where, _ = q.segment_of(e.x)
        if where == "marker":
            raise ValueError(f"point endpoint at marker position {e.x}")
    else:
        q.segment_span(e.seg)


def lane(q: QuiverTypeA, e: Endpoint) -> Optional[str]:
    """Down lane: points in descending segments, whole ascending segments."""
    if q.is_straight:
        return None
    if e.kind == "point":
        _, n = q.segment_of(e.x)
        return DOWN if n % 2 == 0 else UP
    if e.kind == "segment":
        return DOWN if e.seg % 2 == 1 else UP
    raise ValueError("straight-only endpoint on a marked quiver")


def _straight_key(e: Endpoint):
    if e.kind == "neg_inf":
        return (0, Fraction(0), 0)
    if e.kind == "pos_inf":
        return (2, Fraction(0), 0)
    return (1, e.x, e.side)


def _lane_cmp(q: QuiverTypeA, a: Endpoint, b: Endpoint) -> int:
    """Total order within one lane (undefined across lanes)."""
    if a == b:
        return 0
    if a.kind == "point" and b.kind == "point":
        ka, kb = (a.x, a.side), (b.x, b.side)
        return -1 if ka < kb else 1
    if a.kind == "segment" and b.kind == "segment":
        if a.seg == b.seg:
            return -1 if a.side < b.side else 1
        return -1 if a.seg < b.seg else 1
    if a.kind == "point":
        lo, hi = q.segment_span(b.seg)
        if Ext(a.x) < lo:
            return -1
        if Ext(a.x) > hi:
            return 1
        raise ValueError("point lies inside an in-lane segment symbol")
    return -_lane_cmp(q, b, a)


def _lane_lt(q, a, b) -> bool:
    return _lane_cmp(q, a, b) < 0


# -- orientation ------------------------------------------------------------


def _segment_anchor(q: QuiverTypeA, e: Endpoint) -> Ext:
    lo, hi = q.segment_span(e.seg)
    return lo if e.side == MINUS else hi


def orient(q: QuiverTypeA, a: Arc) -> tuple[Endpoint, Endpoint]:
    """(source, target) of an arc; total on valid arcs."""
    e1, e2 = a.endpoints
    if q.is_straight:
        return (e1, e2) if _straight_key(e1) < _straight_key(e2) else (e2, e1)
    l1, l2 = lane(q, e1), lane(q, e2)
    if l1 == l2:
        return (e1, e2) if _lane_lt(q, e1, e2) else (e2, e1)
    if e1.kind == "point" and e2.kind == "point":
        return (e1, e2) if (e1.x, e1.side) < (e2.x, e2.side) else (e2, e1)
    if e1.kind == "segment" and e2.kind == "point":
        seg_end, pt = e1, e2
    elif e1.kind == "point" and e2.kind == "segment":
        seg_end, pt = e2, e1
    else:
        sa = _segment_anchor(q, e1)
        sb = _segment_anchor(q, e2)
        if sa < sb:
            return (e1, e2)
        if sb < sa:
            return (e2, e1)
        # Adjacent segments meeting at one marker: the minus side is the source.
        return (e1, e2) if e1.side == MINUS else (e2, e1)
    lo, hi = q.segment_span(seg_end.seg)
    x = Ext(pt.x)
    if x < lo:
        return (pt, seg_end)
    if x > hi:
        return (seg_end, pt)
    return (seg_end, pt) if seg_end.side == MINUS else (pt, seg_end)


# -- crossing ---------------------------------------------------------------


def _ordered_pair(q: QuiverTypeA, a: Arc, lt) -> tuple[Endpoint, Endpoint]:
    e1, e2 = a.endpoints
    return (e1, e2) if lt(e1, e2) else (e2, e1)


def _interleave(lt, a, b, c, d) -> bool:
    """a..b versus c..d, middle comparison non-strict: arcs that meet from
    opposing endpoint slots still cross."""

    def le(u, v):
        return not lt(v, u)

    return (lt(a, c) and le(c, b) and lt(b, d)) or (lt(c, a) and le(a, d) and lt(d, b))


def crossing(q: QuiverTypeA, t1: Arc, t2: Arc) -> bool:
    if t1 == t2:
        return False
    if q.is_straight:
        def lt(u, v):
            return _straight_key(u) < _straight_key(v)

        a, b = _ordered_pair(q, t1, lt)
        c, d = _ordered_pair(q, t2, lt)
        return _interleave(lt, a, b, c, d)

    lanes1 = (lane(q, t1.e1), lane(q, t1.e2))
    lanes2 = (lane(q, t2.e1), lane(q, t2.e2))
    pure1 = lanes1[0] if lanes1[0] == lanes1[1] else None
    pure2 = lanes2[0] if lanes2[0] == lanes2[1] else None

    shared = set(t1.endpoints) & set(t2.endpoints)
    if shared and not (pure1 is not None and pure1 == pure2):
        e = next(iter(shared))
        s1, _ = orient(q, t1)
        s2, _ = orient(q, t2)
        return (e == s1) != (e == s2)

    if pure1 is not None and pure2 is not None:
        if pure1 != pure2:
            return False

        def lt(u, v):
            return _lane_lt(q, u, v)

        a, b = _ordered_pair(q, t1, lt)
        c, d = _ordered_pair(q, t2, lt)
        return _interleave(lt, a, b, c, d)

    if pure1 is not None or pure2 is not None:
        span, pure = (t2, t1) if pure1 is not None else (t1, t2)
        lane_name = pure1 if pure1 is not None else pure2
        x = span.e1 if lane(q, span.e1) == lane_name else span.e2
        a, b = _ordered_pair(q, pure, lambda u, v: _lane_lt(q, u, v))
        return _lane_lt(q, a, x) and _lane_lt(q, x, b)

    # Both arcs span the lanes.
    a = t1.e1 if lanes1[0] == DOWN else t1.e2
    b = t1.other(a)
    c = t2.e1 if lanes2[0] == DOWN else t2.e2
    d = t2.other(c)
    if _lane_lt(q, a, c) and _lane_lt(q, d, b):
        return True
    if _lane_lt(q, c, a) and _lane_lt(q, b, d):
        return True
    return False


# -- the arc / interval bijection -------------------------------------------


def arc_of_interval(q: QuiverTypeA, m: IntervalIndec) -> Arc:
    """The arc associated to an interval indecomposable."""
    if q.is_straight:
        if m.lower == NEG_INF:
            lo = NEG_END
        else:
            lo = point_end(m.lower.value, MINUS if m.lower_in else PLUS)
        if m.upper == POS_INF:
            hi = POS_END
        else:
            hi = point_end(m.upper.value, PLUS if m.upper_in else MINUS)
        return Arc(lo, hi)

    if m.lower == NEG_INF:
        lo = segment_end(q.neg_inf_index, MINUS)
    else:
        k = q.marker_index(m.lower.value)
        if k is None:
            lo = point_end(m.lower.value, MINUS if m.lower_in else PLUS)
        elif m.lower_in:
            lo = segment_end(k, MINUS)
        else:
            lo = segment_end(k - 1, PLUS)

    if m.upper == POS_INF:
        hi = segment_end(q.pos_inf_index - 1, PLUS)
    else:
        k = q.marker_index(m.upper.value)
        if k is None:
            hi = point_end(m.upper.value, PLUS if m.upper_in else MINUS)
        elif m.upper_in:
            hi = segment_end(k - 1, PLUS)
        else:
            hi = segment_end(k, MINUS)
    return Arc(lo, hi)


def interval_of_arc(q: QuiverTypeA, a: Arc) -> IntervalIndec:
    """Inverse of `arc_of_interval` on valid arcs."""
    if q.is_straight:
        lo_end, hi_end = orient(q, a)
        if lo_end.kind == "neg_inf":
            lower, lower_in = NEG_INF, False
        elif lo_end.kind == "point":
            lower, lower_in = Ext(lo_end.x), lo_end.side == MINUS
        else:
            raise InvalidIntervalError("segment endpoint in the straight model")
        if hi_end.kind == "pos_inf":
            upper, upper_in = POS_INF, False
        elif hi_end.kind == "point":
            upper, upper_in = Ext(hi_end.x), hi_end.side == PLUS
        else:
            raise InvalidIntervalError("segment endpoint in the straight model")
        return IntervalIndec(lower, lower_in, upper, upper_in)

    src, tgt = orient(q, a)
    if src.kind == "point":
        lower, lower_in = Ext(src.x), src.side == MINUS
    else:
        lo, hi = q.segment_span(src.seg)
        if src.side == PLUS:
            lower, lower_in = hi, False
        else:
            lower, lower_in = lo, lo.finite
    if tgt.kind == "point":
        upper, upper_in = Ext(tgt.x), tgt.side == PLUS
    else:
        lo, hi = q.segment_span(tgt.seg)
        if tgt.side == MINUS:
            upper, upper_in = lo, False
        else:
            upper, upper_in = hi, hi.finite
    try:
        return IntervalIndec(lower, lower_in, upper, upper_in)
    except ValueError as exc:
        raise InvalidIntervalError(str(exc)) from exc


def e_compatible(q: QuiverTypeA, m1: IntervalIndec, m2: IntervalIndec) -> bool:
    """Compatibility of two indecomposables: their arcs do not cross."""
    return not crossing(q, arc_of_interval(q, m1), arc_of_interval(q, m2))


# -- endpoint bijections for the quiver isomorphisms ------------------------


def reverse_endpoint(q: QuiverTypeA, e: Endpoint) -> Endpoint:
    """Carry an endpoint of q to the reversed quiver (lanes swap)."""
    if q.is_straight:
        return e
    qr = q.reverse()
    if e.kind == "point":
        return e
    offset = qr.neg_inf_index - q.neg_inf_index
    return segment_end(e.seg + offset, e.side)


def mirror_endpoint(q: QuiverTypeA, e: Endpoint) -> Endpoint:
    """Carry an endpoint of q to the mirrored quiver (order reverses)."""
    if q.is_straight:
        if e.kind == "neg_inf":
            return POS_END
        if e.kind == "pos_inf":
            return NEG_END
        return point_end(-e.x, -e.side)
    qm = q.mirror()
    if e.kind == "point":
        return point_end(-e.x, -e.side)
    gaps = q.pos_inf_index - q.neg_inf_index
    pos = e.seg - q.neg_inf_index
    return segment_end(qm.neg_inf_index + (gaps - 1 - pos), -e.side)


def map_arc(f, q: QuiverTypeA, a: Arc) -> Arc:
    return Arc(f(q, a.e1), f(q, a.e2))
