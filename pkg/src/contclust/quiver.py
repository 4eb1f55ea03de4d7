"""Continuous type-A quivers: alternating sink/source markers on the line.

A quiver is a finite strictly increasing list of marked rationals whose kinds
alternate, plus a direction used only when the list is empty.  The induced
partial order `precede` reverses at every marker; sinks sit at even indices
and sources at odd ones, with the two infinities taking the next indices
outside the list.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

from .numbers import NEG_INF, POS_INF, Ext, as_ext


class Kind(Enum):
    SINK = "sink"
    SOURCE = "source"


class Direction(Enum):
    DESCENDING = "descending"
    ASCENDING = "ascending"


@dataclass(frozen=True)
class Marker:
    pos: Fraction
    kind: Kind


def _canonical_offset(count: int, parity: int) -> int:
    # Valid first-marker indices b satisfy b === parity (mod 2) and keep the
    # index range [b-1, b+count] containing 0.  Pick the assignment whose
    # index range is most nearly centered on 0, ties toward the larger shift.
    best = None
    for b in range(-count, 2):
        if (b - parity) % 2 != 0:
            continue
        score = (abs(2 * b + count - 1), -b)
        if best is None or score < best[0]:
            best = (score, b)
    assert best is not None
    return best[1]


@dataclass(frozen=True)
class QuiverTypeA:
    markers: tuple[Marker, ...] = ()
    direction: Direction = Direction.DESCENDING

    def __post_init__(self):
        for a, b in zip(self.markers, self.markers[1:]):
            if not a.pos < b.pos:
                raise ValueError("marker positions must be strictly increasing")
            if a.kind == b.kind:
                raise ValueError("marker kinds must alternate")

    # -- indexing ---------------------------------------------------------

    @property
    def index0(self) -> int:
        """Index assigned to the first marker (meaningless when empty)."""
        if not self.markers:
            # Descending: -oo acts as the sink at index 0; ascending: +oo does.
            # index0 is the would-be first-marker index, one above -oo's.
            return 1 if self.direction is Direction.DESCENDING else 0
        parity = 0 if self.markers[0].kind is Kind.SINK else 1
        return _canonical_offset(len(self.markers), parity)

    @property
    def neg_inf_index(self) -> int:
        return self.index0 - 1

    @property
    def pos_inf_index(self) -> int:
        return self.index0 + len(self.markers)

    def marker_position(self, n: int) -> Ext:
        """Position of the element with index n (markers or the infinities)."""
        if n == self.neg_inf_index:
            return NEG_INF
        if n == self.pos_inf_index:
            return POS_INF
        k = n - self.index0
        if 0 <= k < len(self.markers):
            return Ext(self.markers[k].pos)
        raise KeyError(f"no element with index {n}")

    def marker_index(self, pos: Fraction) -> Optional[int]:
        for k, m in enumerate(self.markers):
            if m.pos == pos:
                return self.index0 + k
        return None

    def kind_at_index(self, n: int) -> Kind:
        """Sinks at even indices, sources at odd (including virtual +-oo)."""
        return Kind.SINK if n % 2 == 0 else Kind.SOURCE

    @property
    def sink_positions(self) -> tuple[Fraction, ...]:
        return tuple(m.pos for m in self.markers if m.kind is Kind.SINK)

    @property
    def source_positions(self) -> tuple[Fraction, ...]:
        return tuple(m.pos for m in self.markers if m.kind is Kind.SOURCE)

    @property
    def is_straight(self) -> bool:
        return not self.markers

    # -- locating points --------------------------------------------------

    def segment_of(self, x) -> tuple[str, int]:
        """("marker", n) when x sits at the indexed element, else ("segment", n)
        for the open segment between indices n and n+1."""
        x = as_ext(x)
        if x == NEG_INF:
            return ("marker", self.neg_inf_index)
        if x == POS_INF:
            return ("marker", self.pos_inf_index)
        for k, m in enumerate(self.markers):
            if x.value == m.pos:
                return ("marker", self.index0 + k)
        n = self.neg_inf_index
        for k, m in enumerate(self.markers):
            if x.value < m.pos:
                return ("segment", self.index0 + k - 1)
        return ("segment", self.pos_inf_index - 1)

    def segment_span(self, n: int) -> tuple[Ext, Ext]:
        """Endpoints (s_n, s_{n+1}) of the open segment with index n."""
        if not (self.neg_inf_index <= n < self.pos_inf_index):
            raise KeyError(f"no segment with index {n}")
        return self.marker_position(n), self.marker_position(n + 1)

    @property
    def segment_indices(self) -> range:
        return range(self.neg_inf_index, self.pos_inf_index)

    # -- the partial order ------------------------------------------------

    def downset(self, x) -> Optional[tuple[Ext, bool, Ext, bool]]:
        """The set {y : y precedes x} as (lo, lo_closed, hi, hi_closed).

        Infinite ends are open and mean the flow runs unbounded that way.
        Returns None when no real point precedes x (x a virtual sink at +-oo).
        """
        x = as_ext(x)
        kind, n = self.segment_of(x)
        if kind == "marker":
            here = self.kind_at_index(n)
            if not x.finite:
                if here is Kind.SINK:
                    return None
                side = n - 1 if x == POS_INF else n + 1
                lo, hi = (self.marker_position(side), x) if x == POS_INF else (x, self.marker_position(side))
                return (lo, lo.finite, hi, hi.finite)
            if here is Kind.SINK:
                return (x, True, x, True)
            lo = self.marker_position(n - 1)
            hi = self.marker_position(n + 1)
            return (lo, lo.finite, hi, hi.finite)
        # x interior to segment n: even n flows toward s_n, odd toward s_{n+1}
        if n % 2 == 0:
            lo = self.marker_position(n)
            return (lo, lo.finite, x, True)
        hi = self.marker_position(n + 1)
        return (x, True, hi, hi.finite)

    def precede(self, y, x) -> bool:
        """y precedes x: y lies between x and the sink x flows toward."""
        y = as_ext(y)
        x = as_ext(x)
        if y == x:
            return True
        d = self.downset(x)
        if d is None:
            return False
        lo, lo_in, hi, hi_in = d
        if y == NEG_INF:
            return lo == NEG_INF
        if y == POS_INF:
            return hi == POS_INF
        above = y > lo or (y == lo and lo_in)
        below = y < hi or (y == hi and hi_in)
        return above and below

    # -- derived quivers ---------------------------------------------------

    def _flipped_direction(self) -> Direction:
        # The direction field only matters when there are no markers.
        if self.markers:
            return self.direction
        return (
            Direction.ASCENDING
            if self.direction is Direction.DESCENDING
            else Direction.DESCENDING
        )

    def reverse(self) -> "QuiverTypeA":
        """Swap sinks and sources in place (the opposite orientation)."""
        flipped = tuple(
            Marker(m.pos, Kind.SOURCE if m.kind is Kind.SINK else Kind.SINK)
            for m in self.markers
        )
        return QuiverTypeA(flipped, self._flipped_direction())

    def mirror(self) -> "QuiverTypeA":
        """Negate all positions (orientation read right to left)."""
        mirrored = tuple(Marker(-m.pos, m.kind) for m in reversed(self.markers))
        return QuiverTypeA(mirrored, self._flipped_direction())

    # -- serialization -----------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "markers": [{"pos": str(m.pos), "kind": m.kind.value} for m in self.markers],
            "direction": self.direction.value,
        }

    @staticmethod
    def from_json_dict(d: dict) -> "QuiverTypeA":
        markers = tuple(
            Marker(Fraction(m["pos"]), Kind(m["kind"])) for m in d.get("markers", [])
        )
        return QuiverTypeA(markers, Direction(d.get("direction", "descending")))

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @staticmethod
    def from_json(s: str) -> "QuiverTypeA":
        return QuiverTypeA.from_json_dict(json.loads(s))


def quiver_from_positions(sinks, sources, direction: str = "descending") -> QuiverTypeA:
    """Build a quiver from separate sink/source position lists."""
    marks = [Marker(Fraction(p), Kind.SINK) for p in sinks]
    marks += [Marker(Fraction(p), Kind.SOURCE) for p in sources]
    marks.sort(key=lambda m: m.pos)
    return QuiverTypeA(tuple(marks), Direction(direction))


STRAIGHT_DESCENDING = QuiverTypeA()
STRAIGHT_ASCENDING = QuiverTypeA(direction=Direction.ASCENDING)
