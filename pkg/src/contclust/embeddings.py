"""Embeddings between the polygon, infinity-gon, completed, strip, and line
cluster models.

The line-side images of infinite triangulations are uncountable; they are
represented by the background cluster (anchor-gap tilings, outer integer-gap
tilings, the integer ray ladder) plus mapped copies of the triangulation's
tails.  Everything here lives over the straight descending orientation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional

from . import clusters as cl
from . import gons
from . import intervals as iv
from .clusters import ClusterRep, CrossReport, _Window, _cross, _interval_window, _report
from .intervals import IntervalIndec
from .numbers import NEG_INF, POS_INF, Ext
from .quiver import STRAIGHT_DESCENDING


class MismatchError(AssertionError):
    pass


@dataclass(frozen=True)
class IndexRange:
    """Contiguous set of map indices; None bounds mean unbounded."""

    empty: bool
    lo: Optional[int] = None
    hi: Optional[int] = None


# -- anchor sequences ---------------------------------------------------------


def _default_anchor(i: int) -> Fraction:
    # 1/8, 1/4, 1/2, 3/4, 7/8, ... with limits 0 and 1
    if i >= 0:
        return 1 - Fraction(1, 2 ** (i + 1))
    return Fraction(1, 2 ** (1 - i))


@dataclass(frozen=True)
class AnchorSequence:
    """Strictly increasing anchors with integer limits at both ends."""

    a: Callable[[int], Fraction] = _default_anchor
    lo: int = 0
    hi: int = 1

    def value(self, i: int) -> Fraction:
        v = Fraction(self.a(i))
        if not (self.lo < v < self.hi):
            raise ValueError(f"anchor a_{i}={v} outside ({self.lo},{self.hi})")
        return v

    def subdivision(self, i: int, j: int, depth: int) -> Fraction:
        lo, hi = self.value(i), self.value(i + 1)
        return lo + Fraction(j, 2 ** depth) * (hi - lo)

    def index_of(self, x: Fraction) -> Optional[int]:
        """The i with a_i == x, or None."""
        if not (self.lo < x < self.hi):
            return None
        i = self.gap_below(x)
        for cand in (i, i + 1):
            try:
                if self.value(cand) == x:
                    return cand
            except ValueError:
                pass
        return None

    def gap_below(self, x: Fraction) -> int:
        """Largest i with a_i <= x (requires lo < x < hi)."""
        if not (self.lo < x < self.hi):
            raise ValueError("x outside the anchor span")
        i = 0
        if self.value(i) <= x:
            step = 1
            while self.value(i + step) <= x:
                i += step
                step *= 2
            hi = i + step
            while i + 1 < hi:
                mid = (i + 1 + hi) // 2
                if self.value(mid) <= x:
                    i = mid
                else:
                    hi = mid
            return i
        step = 1
        while self.value(i - step) > x:
            step *= 2
        lo_i = i - step
        while lo_i + 1 < i:
            mid = (lo_i + i) // 2
            if self.value(mid) > x:
                i = mid
            else:
                lo_i = mid
        return lo_i

    def first_ge(self, x: Fraction) -> Optional[int]:
        """Smallest i with a_i >= x; None when x is above every anchor."""
        if x >= self.hi:
            return None
        if x <= self.lo:
            raise ValueError("unbounded below: no smallest index")
        i = self.gap_below(x)
        return i if self.value(i) == x else i + 1

    def anchors_in(self, w: _Window) -> IndexRange:
        """The contiguous index range {i : a_i in w}.

        Anchors accumulate at both limits, so a window reaching past a limit
        holds infinitely many of them.
        """
        if w.empty:
            return IndexRange(True)
        lo_e, hi_e = Ext(self.lo), Ext(self.hi)
        if w.hi <= lo_e or w.lo >= hi_e:
            return IndexRange(True)
        unb_below = w.lo <= lo_e  # every small index passes the lower test
        unb_above = w.hi >= hi_e
        lo_idx: Optional[int] = None
        if not unb_below:
            i = self.first_ge(w.lo.value)
            if i is None:
                return IndexRange(True)
            if Ext(self.value(i)) == w.lo and not w.lo_in:
                i += 1
            lo_idx = i
        hi_idx: Optional[int] = None
        if not unb_above:
            i = self.gap_below(w.hi.value)
            if Ext(self.value(i)) == w.hi and not w.hi_in:
                i -= 1
            hi_idx = i
        if lo_idx is not None and hi_idx is not None and lo_idx > hi_idx:
            return IndexRange(True)
        return IndexRange(False, lo_idx, hi_idx)


DEFAULT_ANCHORS = AnchorSequence()


# -- vertex maps ----------------------------------------------------------------


@dataclass(frozen=True)
class AnchorVertexMap:
    seq: AnchorSequence

    def to_ext(self, v) -> Ext:
        if v == gons.NEG_V:
            return Ext(self.seq.lo)
        if v == gons.POS_V:
            return Ext(self.seq.hi)
        return Ext(self.seq.value(int(v)))

    def inverse(self, e: Ext) -> Optional[int]:
        if not e.finite:
            return None
        return self.seq.index_of(e.value)

    def indices_in(self, w: _Window) -> IndexRange:
        return self.seq.anchors_in(w)

    def reach_index(self, e: Ext) -> int:
        if not e.finite or not (self.seq.lo < e.value < self.seq.hi):
            return 0
        return abs(self.seq.gap_below(e.value)) + 1


@dataclass(frozen=True)
class IntegerVertexMap:
    def to_ext(self, v) -> Ext:
        if v == gons.NEG_V:
            return NEG_INF
        if v == gons.POS_V:
            return POS_INF
        return Ext(int(v))

    def inverse(self, e: Ext) -> Optional[int]:
        if not e.finite or e.value.denominator != 1:
            return None
        return int(e.value)

    def indices_in(self, w: _Window) -> IndexRange:
        if w.empty:
            return IndexRange(True)
        lo_idx: Optional[int] = None
        if w.lo.finite:
            lo_idx = w.lo.value.__ceil__()
            if Fraction(lo_idx) == w.lo.value and not w.lo_in:
                lo_idx += 1
        hi_idx: Optional[int] = None
        if w.hi.finite:
            hi_idx = w.hi.value.__floor__()
            if Fraction(hi_idx) == w.hi.value and not w.hi_in:
                hi_idx -= 1
        if lo_idx is not None and hi_idx is not None and lo_idx > hi_idx:
            return IndexRange(True)
        return IndexRange(False, lo_idx, hi_idx)

    def reach_index(self, e: Ext) -> int:
        if not e.finite:
            return 0
        return abs(int(e.value)) + 1


# -- meta families over the anchor structure -------------------------------------


def _merge(reports: Iterable[CrossReport]) -> CrossReport:
    members: list[IntervalIndec] = []
    infinite = False
    for r in reports:
        members.extend(r.members)
        infinite = infinite or r.kind == cl.INFINITE
    return _report(members, infinite)


@dataclass(frozen=True)
class AnchorGapFamilies:
    """Dyadic tilings (and optionally singleton complements) of every anchor
    gap (a_i, a_{i+1})."""

    seq: AnchorSequence
    singletons: bool = True

    def _gap(self, i: int) -> cl.DyadicTiling:
        return cl.DyadicTiling(self.seq.value(i), self.seq.value(i + 1))

    def _complement(self, i: int) -> cl.SingletonComplement:
        return cl.SingletonComplement(self.seq.value(i), self.seq.value(i + 1))

    def _gaps_near(self, e: Ext) -> set[int]:
        if not e.finite or not (self.seq.lo < e.value < self.seq.hi):
            return set()
        i = self.seq.gap_below(e.value)
        out = {i}
        if self.seq.value(i) == e.value:
            out.add(i - 1)
        return out

    def _relevant_gaps(self, m: IntervalIndec) -> set[int]:
        return self._gaps_near(m.lower) | self._gaps_near(m.upper)

    def contains(self, m: IntervalIndec) -> bool:
        for g in self._relevant_gaps(m):
            if self._gap(g).contains(m):
                return True
            if self.singletons and self._complement(g).contains(m):
                return True
        return False

    def cross_witnesses(self, m: IntervalIndec) -> CrossReport:
        reports = []
        for g in sorted(self._relevant_gaps(m)):
            reports.append(self._gap(g).cross_witnesses(m))
            if self.singletons:
                reports.append(self._complement(g).cross_witnesses(m))
        return _merge(reports)

    def sample(self, rng: random.Random, k: int) -> list[IntervalIndec]:
        out = []
        for _ in range(k):
            g = rng.randrange(-3, 4)
            fam = self._gap(g)
            if self.singletons and rng.random() < 0.3:
                out.extend(self._complement(g).sample(rng, 1))
            else:
                out.extend(fam.sample(rng, 1))
        return out

    def truncated(self, depth: int):
        for g in range(-depth, depth + 1):
            yield from self._gap(g).truncated(depth)

    def candidate_points(self, m: IntervalIndec) -> set[Fraction]:
        pts: set[Fraction] = set()
        gaps = set()
        for e in (m.lower, m.upper):
            for g in self._gaps_near(e):
                gaps.update((g - 1, g, g + 1))
        for g in gaps:
            pts.update(self._gap(g).candidate_points(m) or {self.seq.value(g), self.seq.value(g + 1)})
        return pts

    def to_json_dict(self) -> dict:
        return {
            "kind": "anchor_gap_families",
            "lo": self.seq.lo,
            "hi": self.seq.hi,
            "singletons": self.singletons,
        }


@dataclass(frozen=True)
class OuterGapFamilies:
    """Unit-gap tilings (and complements) for integer gaps outside [lo, hi)."""

    lo: int
    hi: int
    singletons: bool = True

    def _is_outer(self, i: int) -> bool:
        return i < self.lo or i >= self.hi

    def _gap(self, i: int) -> cl.DyadicTiling:
        return cl.DyadicTiling(Fraction(i), Fraction(i + 1))

    def _complement(self, i: int) -> cl.SingletonComplement:
        return cl.SingletonComplement(Fraction(i), Fraction(i + 1))

    def _gaps_near(self, e: Ext) -> set[int]:
        if not e.finite:
            return set()
        i = e.value.__floor__()
        out = {i}
        if Fraction(i) == e.value:
            out.add(i - 1)
        return {g for g in out if self._is_outer(g)}

    def _relevant_gaps(self, m: IntervalIndec) -> set[int]:
        return self._gaps_near(m.lower) | self._gaps_near(m.upper)

    def contains(self, m: IntervalIndec) -> bool:
        for g in self._relevant_gaps(m):
            if self._gap(g).contains(m):
                return True
            if self.singletons and self._complement(g).contains(m):
                return True
        return False

    def cross_witnesses(self, m: IntervalIndec) -> CrossReport:
        reports = []
        for g in sorted(self._relevant_gaps(m)):
            reports.append(self._gap(g).cross_witnesses(m))
            if self.singletons:
                reports.append(self._complement(g).cross_witnesses(m))
        return _merge(reports)

    def sample(self, rng: random.Random, k: int) -> list[IntervalIndec]:
        gaps = [g for g in range(self.lo - 4, self.hi + 4) if self._is_outer(g)]
        out = []
        for _ in range(k):
            g = rng.choice(gaps)
            if self.singletons and rng.random() < 0.3:
                out.extend(self._complement(g).sample(rng, 1))
            else:
                out.extend(self._gap(g).sample(rng, 1))
        return out

    def truncated(self, depth: int):
        for g in range(self.lo - depth, self.hi + depth):
            if self._is_outer(g):
                yield from self._gap(g).truncated(depth)

    def candidate_points(self, m: IntervalIndec) -> set[Fraction]:
        pts: set[Fraction] = set()
        gaps = set()
        for e in (m.lower, m.upper):
            for g in self._gaps_near(e):
                gaps.update(x for x in (g - 1, g, g + 1) if self._is_outer(x))
        for g in gaps:
            pts.update(self._gap(g).candidate_points(m))
            pts.update({Fraction(g), Fraction(g + 1)})
        return pts

    def to_json_dict(self) -> dict:
        return {"kind": "outer_gap_families", "lo": self.lo, "hi": self.hi, "singletons": self.singletons}


@dataclass(frozen=True)
class AllIntegerGapTilings:
    """Dyadic tilings of every unit gap (i, i+1), i ranging over all integers."""

    def _gap(self, i: int) -> cl.DyadicTiling:
        return cl.DyadicTiling(Fraction(i), Fraction(i + 1))

    def _gaps_near(self, e: Ext) -> set[int]:
        if not e.finite:
            return set()
        i = e.value.__floor__()
        out = {i}
        if Fraction(i) == e.value:
            out.add(i - 1)
        return out

    def contains(self, m: IntervalIndec) -> bool:
        return any(self._gap(g).contains(m) for g in self._gaps_near(m.lower) | self._gaps_near(m.upper))

    def cross_witnesses(self, m: IntervalIndec) -> CrossReport:
        gaps = sorted(self._gaps_near(m.lower) | self._gaps_near(m.upper))
        return _merge(self._gap(g).cross_witnesses(m) for g in gaps)

    def sample(self, rng: random.Random, k: int) -> list[IntervalIndec]:
        return [x for _ in range(k) for x in self._gap(rng.randrange(-4, 4)).sample(rng, 1)]

    def truncated(self, depth: int):
        for g in range(-depth, depth + 1):
            yield from self._gap(g).truncated(depth)

    def candidate_points(self, m: IntervalIndec) -> set[Fraction]:
        pts: set[Fraction] = set()
        gaps = set()
        for e in (m.lower, m.upper):
            for g in self._gaps_near(e):
                gaps.update((g - 1, g, g + 1))
        for g in gaps:
            pts.update(self._gap(g).candidate_points(m))
            pts.update({Fraction(g), Fraction(g + 1)})
        return pts

    def to_json_dict(self) -> dict:
        return {"kind": "all_integer_gap_tilings"}


@dataclass(frozen=True)
class IntegerRayLadder:
    """Left rays anchored at the integers j <= lo_cut or j >= hi_cut."""

    closed: bool
    lo_cut: int
    hi_cut: int

    def _in_range(self, j: int) -> bool:
        return j <= self.lo_cut or j >= self.hi_cut

    def member(self, j: int) -> IntervalIndec:
        return iv.left_ray(j, self.closed)

    def contains(self, m: IntervalIndec) -> bool:
        return (
            m.lower == NEG_INF
            and m.upper.finite
            and m.upper_in == self.closed
            and m.upper.value.denominator == 1
            and self._in_range(int(m.upper.value))
        )

    def cross_witnesses(self, m: IntervalIndec) -> CrossReport:
        if not m.lower.finite:
            return CrossReport(cl.NONE)
        a, b = m.lower, m.upper
        if self.closed:
            # member (-inf, j] crosses m iff a <= j and (j < b, or j == b in m)
            w = _Window(a, True, b, m.upper_in)
        else:
            # member (-inf, j) crosses m iff (a < j, or a == j in m) and j <= b-ish
            w = _Window(a, m.lower_in, b, m.upper_in)
        if w.empty:
            return CrossReport(cl.NONE)
        if not w.hi.finite:
            js = [j for j in range(w.lo.value.__ceil__(), w.lo.value.__ceil__() + 3) if self._in_range(j)]
            return _report([self.member(j) for j in js if w.contains(Fraction(j))], True)
        members = []
        j = w.lo.value.__ceil__()
        while Fraction(j) <= w.hi.value:
            if w.contains(Fraction(j)) and self._in_range(j):
                members.append(self.member(j))
            j += 1
        return _report(members, False)

    def sample(self, rng: random.Random, k: int) -> list[IntervalIndec]:
        js = [j for j in range(self.lo_cut - 6, self.hi_cut + 7) if self._in_range(j)]
        return [self.member(rng.choice(js)) for _ in range(k)]

    def truncated(self, depth: int):
        for j in range(self.lo_cut - depth, self.hi_cut + depth + 1):
            if self._in_range(j):
                yield self.member(j)

    def candidate_points(self, m: IntervalIndec) -> set[Fraction]:
        pts: set[Fraction] = set()
        for e in (m.lower, m.upper):
            if e.finite:
                f = e.value.__floor__()
                pts.update(Fraction(f + d) for d in (-1, 0, 1, 2))
        return pts

    def to_json_dict(self) -> dict:
        return {
            "kind": "integer_ray_ladder",
            "closed": self.closed,
            "lo_cut": self.lo_cut,
            "hi_cut": self.hi_cut,
        }


@dataclass(frozen=True)
class MappedFan:
    """Image of a fan tail: open intervals (map(k), map(v)) or (map(v), map(k))."""

    vmap: object
    fan: gons.Fan

    def _vertex_ext(self) -> Ext:
        return self.vmap.to_ext(self.fan.vertex)

    def contains(self, m: IntervalIndec) -> bool:
        if m.lower_in or m.upper_in or m.is_singleton:
            return False
        if self.fan.direction == gons.LEFT:
            if m.upper != self._vertex_ext():
                return False
            k = self.vmap.inverse(m.lower)
            return k is not None and k <= self.fan.start
        if m.lower != self._vertex_ext():
            return False
        k = self.vmap.inverse(m.upper)
        return k is not None and k >= self.fan.start

    def _gate(self, rng_: IndexRange) -> tuple[bool, list[int]]:
        """Restrict an index query to the fan's index range."""
        if rng_.empty:
            return (False, [])
        if self.fan.direction == gons.LEFT:
            if rng_.lo is None:
                return (True, [])
            hi = self.fan.start if rng_.hi is None else min(rng_.hi, self.fan.start)
            return (False, list(range(rng_.lo, hi + 1)))
        if rng_.hi is None:
            return (True, [])
        lo = self.fan.start if rng_.lo is None else max(rng_.lo, self.fan.start)
        return (False, list(range(lo, rng_.hi + 1)))

    def _member(self, k: int) -> IntervalIndec:
        kv = self.vmap.to_ext(k)
        v = self._vertex_ext()
        if self.fan.direction == gons.LEFT:
            return IntervalIndec(kv, False, v, False)
        return IntervalIndec(v, False, kv, False)

    def cross_witnesses(self, m: IntervalIndec) -> CrossReport:
        v = self._vertex_ext()
        inside = _interval_window(m)  # endpoints allowed exactly when in m
        v_inside = inside.contains(v.value) if v.finite else False
        reports = []
        if self.fan.direction == gons.LEFT:
            # members (A_k, V): crossing when A_k inside m and V beyond the top,
            # or V inside m and A_k before the bottom
            if m.upper < v:
                unb, ks = self._gate(self.vmap.indices_in(inside))
                reports.append(_report([self._member(k) for k in ks], unb))
            if v_inside:
                below = _Window(NEG_INF, False, m.lower, False)
                unb, ks = self._gate(self.vmap.indices_in(below))
                reports.append(_report([self._member(k) for k in ks], unb))
        else:
            # members (V, A_k): crossing when V inside m and A_k beyond the top,
            # or A_k inside m and V before the bottom
            if v_inside:
                above = _Window(m.upper, False, POS_INF, False)
                unb, ks = self._gate(self.vmap.indices_in(above))
                reports.append(_report([self._member(k) for k in ks], unb))
            if v < m.lower:
                unb, ks = self._gate(self.vmap.indices_in(inside))
                reports.append(_report([self._member(k) for k in ks], unb))
        return _merge(reports)

    def sample(self, rng: random.Random, k: int) -> list[IntervalIndec]:
        out = []
        for _ in range(k):
            if self.fan.direction == gons.LEFT:
                out.append(self._member(self.fan.start - rng.randrange(0, 8)))
            else:
                out.append(self._member(self.fan.start + rng.randrange(0, 8)))
        return out

    def truncated(self, depth: int):
        for d in range(depth + 1):
            if self.fan.direction == gons.LEFT:
                yield self._member(self.fan.start - d)
            else:
                yield self._member(self.fan.start + d)

    def candidate_points(self, m: IntervalIndec) -> set[Fraction]:
        pts = {self._vertex_ext().value}
        ks = [self.fan.start + d for d in (-2, -1, 0, 1, 2)]
        for e in (m.lower, m.upper):
            k = self.vmap.inverse(e)
            if k is not None:
                ks.extend(k + d for d in (-2, -1, 0, 1, 2))
        for k in ks:
            if self.fan.direction == gons.LEFT and k > self.fan.start:
                continue
            if self.fan.direction == gons.RIGHT and k < self.fan.start:
                continue
            v = self.vmap.to_ext(k)
            if v.finite:
                pts.add(v.value)
        return pts

    def to_json_dict(self) -> dict:
        return {"kind": "mapped_fan", "fan": self.fan.to_json_dict()}


@dataclass(frozen=True)
class MappedZigzag:
    """Image of a zigzag tail under a vertex map."""

    vmap: object
    zz: gons.Zigzag

    def _member(self, i: int, which: int) -> IntervalIndec:
        lo = self.vmap.to_ext(-i if which == 0 else -i + 1)
        hi = self.vmap.to_ext(i)
        return IntervalIndec(lo, False, hi, False)

    def contains(self, m: IntervalIndec) -> bool:
        if m.lower_in or m.upper_in or m.is_singleton:
            return False
        i = self.vmap.inverse(m.upper)
        if i is None or i < self.zz.start:
            return False
        k = self.vmap.inverse(m.lower)
        return k in (-i, -i + 1)

    def _bound(self, m: IntervalIndec) -> int:
        return max(self.zz.start, self.vmap.reach_index(m.lower), self.vmap.reach_index(m.upper)) + 3

    def cross_witnesses(self, m: IntervalIndec) -> CrossReport:
        bound = self._bound(m)
        witnesses = []
        for i in range(self.zz.start, bound + 1):
            for which in (0, 1):
                c = self._member(i, which)
                if _cross(m, c):
                    witnesses.append(c)
        infinite = any(
            _cross(m, self._member(i, w)) for i in (bound + 1, bound + 8) for w in (0, 1)
        )
        return _report(witnesses, infinite)

    def sample(self, rng: random.Random, k: int) -> list[IntervalIndec]:
        return [self._member(self.zz.start + rng.randrange(0, 8), rng.randrange(0, 2)) for _ in range(k)]

    def truncated(self, depth: int):
        for i in range(self.zz.start, self.zz.start + depth + 1):
            yield self._member(i, 0)
            yield self._member(i, 1)

    def candidate_points(self, m: IntervalIndec) -> set[Fraction]:
        bound = self._bound(m)
        pts: set[Fraction] = set()
        for i in range(self.zz.start, bound + 1):
            for v in (-i, -i + 1, i):
                e = self.vmap.to_ext(v)
                if e.finite:
                    pts.add(e.value)
        return pts

    def to_json_dict(self) -> dict:
        return {"kind": "mapped_zigzag", "zigzag": self.zz.to_json_dict()}


def _mapped_tail(vmap, tail):
    if isinstance(tail, gons.Fan):
        return MappedFan(vmap, tail)
    return MappedZigzag(vmap, tail)


# -- the background cluster -----------------------------------------------------


def background_cluster(seq: AnchorSequence = DEFAULT_ANCHORS) -> ClusterRep:
    """The distinguished compatible set of the line: anchor-gap tilings with
    singleton complements, outer unit-gap tilings, the ladder of open left
    rays at the outer integers, the anchor-span interval and the full line.

    The rays must be open: a ray closed at j forms an extension with the unit
    cells just above j, so only the open ray coexists with the outer tilings.
    """
    explicit = frozenset([iv.open_iv(seq.lo, seq.hi), iv.whole_line()])
    families = (
        AnchorGapFamilies(seq, singletons=True),
        OuterGapFamilies(seq.lo, seq.hi, singletons=True),
        IntegerRayLadder(False, seq.lo, seq.hi),
    )
    return ClusterRep(STRAIGHT_DESCENDING, explicit, families)


def strip_background_families(seq: AnchorSequence) -> tuple:
    return (
        AnchorGapFamilies(seq, singletons=False),
        OuterGapFamilies(seq.lo, seq.hi, singletons=False),
        IntegerRayLadder(False, seq.lo, seq.hi),
    )


# -- polygon chain (the inclusion functors) ---------------------------------------


def extend_polygon(t: gons.GonTriangulation) -> gons.GonTriangulation:
    """(m+3)-gon into the (m+4)-gon: the old closing side becomes a diagonal."""
    if t.arena != gons.FINITE:
        raise ValueError("polygon expected")
    m = t.n
    return gons.GonTriangulation(
        gons.FINITE, m + 1, t.explicit | {gons.Diagonal(1, m + 3)}
    )


def extend_polygon_to(t: gons.GonTriangulation, n: int) -> gons.GonTriangulation:
    while t.n < n:
        t = extend_polygon(t)
    if t.n != n:
        raise ValueError("cannot shrink a polygon")
    return t


def polygon_to_infgon(t: gons.GonTriangulation) -> gons.GonTriangulation:
    """Polygon triangulation into the infinity-gon with fans at vertex 1."""
    if t.arena != gons.FINITE:
        raise ValueError("polygon expected")
    n = t.n
    return gons.infinite_triangulation(
        t.explicit, [gons.Fan(1, gons.LEFT, -1), gons.Fan(1, gons.RIGHT, n + 3)]
    )


def complete_infgon(t: gons.GonTriangulation) -> gons.GonTriangulation:
    """Prufer-then-adic completion of an infinity-gon triangulation."""
    if t.arena != gons.INFINITE:
        raise ValueError("infinity-gon triangulation expected")
    core = gons.GonTriangulation(gons.COMPLETED, None, t.explicit, t.tails)
    return gons.prufer_completion(gons.adic_completion(core))


def _image_of_diagonal(vmap, d: gons.Diagonal) -> IntervalIndec:
    return IntervalIndec(vmap.to_ext(d.i), False, vmap.to_ext(d.j), False)


def polygon_to_line(t: gons.GonTriangulation, seq: AnchorSequence = DEFAULT_ANCHORS) -> ClusterRep:
    """Direct line image of a polygon triangulation."""
    if t.arena != gons.FINITE:
        raise ValueError("polygon expected")
    vmap = AnchorVertexMap(seq)
    base = background_cluster(seq)
    explicit = set(base.explicit)
    explicit.add(iv.open_iv(seq.lo, seq.value(1)))
    explicit.add(iv.open_iv(seq.value(1), seq.hi))
    explicit.update(_image_of_diagonal(vmap, d) for d in t.explicit)
    families = base.families + (
        MappedFan(vmap, gons.Fan(1, gons.LEFT, -1)),
        MappedFan(vmap, gons.Fan(1, gons.RIGHT, t.n + 3)),
    )
    return ClusterRep(STRAIGHT_DESCENDING, frozenset(explicit), families)


def infgon_to_line(t: gons.GonTriangulation, seq: AnchorSequence = DEFAULT_ANCHORS) -> ClusterRep:
    """Line image of an infinity-gon triangulation (fountains add rays)."""
    if t.arena != gons.INFINITE:
        raise ValueError("infinity-gon triangulation expected")
    vmap = AnchorVertexMap(seq)
    base = background_cluster(seq)
    explicit = set(base.explicit)
    explicit.update(_image_of_diagonal(vmap, d) for d in t.explicit)
    report = gons.classify_fountains(t)
    if report.kind != gons.LOCALLY_FINITE:
        m, n = report.left, report.right
        explicit.add(iv.open_iv(seq.lo, seq.value(m)))
        explicit.add(iv.open_iv(seq.lo, seq.value(n)))
        explicit.add(iv.open_iv(seq.value(n), seq.hi))
    families = base.families + tuple(_mapped_tail(vmap, tl) for tl in t.tails)
    return ClusterRep(STRAIGHT_DESCENDING, frozenset(explicit), families)


def completed_to_line(t: gons.GonTriangulation, seq: AnchorSequence = DEFAULT_ANCHORS) -> ClusterRep:
    """Line image of a completed-infinity-gon triangulation."""
    if t.arena != gons.COMPLETED:
        raise ValueError("completed triangulation expected")
    vmap = AnchorVertexMap(seq)
    base = background_cluster(seq)
    explicit = set(base.explicit)
    explicit.update(_image_of_diagonal(vmap, d) for d in t.explicit)
    families = base.families + tuple(_mapped_tail(vmap, tl) for tl in t.tails)
    return ClusterRep(STRAIGHT_DESCENDING, frozenset(explicit), families)


def completed_to_strip(t: gons.GonTriangulation, seq: AnchorSequence = DEFAULT_ANCHORS) -> ClusterRep:
    """Strip-side image, stored by interval coordinates: the background minus
    singletons, open rays in place of closed ones."""
    if t.arena != gons.COMPLETED:
        raise ValueError("completed triangulation expected")
    vmap = AnchorVertexMap(seq)
    explicit = {iv.open_iv(seq.lo, seq.hi), iv.left_ray(seq.hi, False)}
    explicit.update(_image_of_diagonal(vmap, d) for d in t.explicit)
    families = strip_background_families(seq) + tuple(_mapped_tail(vmap, tl) for tl in t.tails)
    return ClusterRep(STRAIGHT_DESCENDING, frozenset(explicit), families)


# -- the centered chain (structure-preserving functors) ----------------------------


def centered_extend_polygon(t: gons.GonTriangulation) -> gons.GonTriangulation:
    """Polygon step of the centered chain: shifts on odd sizes."""
    if t.arena != gons.FINITE:
        raise ValueError("polygon expected")
    m = t.n
    if m % 2 == 0:
        return extend_polygon(t)
    shifted = frozenset(gons.Diagonal(d.i + 1, d.j + 1) for d in t.explicit)
    return gons.GonTriangulation(gons.FINITE, m + 1, shifted | {gons.Diagonal(2, m + 4)})


def centered_extend_polygon_to(t: gons.GonTriangulation, n: int) -> gons.GonTriangulation:
    while t.n < n:
        t = centered_extend_polygon(t)
    if t.n != n:
        raise ValueError("cannot shrink a polygon")
    return t


def centered_shift(n: int) -> int:
    """Shift placing the (n+3)-gon symmetrically around 0 in the infinity-gon.

    Odd n: (n+3)/2.  Even n: (n+4)/2 -- the centered zigzag leaves a window of
    width n+2 between -(n+2)/2 and (n+2)/2, so vertex 1 must land on -(n+2)/2;
    the smaller even shift breaks both maximality and the chain compatibility.
    """
    return (n + 4) // 2


def centered_polygon_to_infgon(t: gons.GonTriangulation) -> gons.GonTriangulation:
    if t.arena != gons.FINITE:
        raise ValueError("polygon expected")
    n = t.n
    s = centered_shift(n)
    shifted = [gons.Diagonal(d.i - s, d.j - s) for d in t.explicit]
    if n % 2 == 0:
        c = (n + 2) // 2
        return gons.infinite_triangulation(shifted + [gons.Diagonal(-c, c)], [gons.Zigzag(c + 1)])
    c = (n + 3) // 2
    return gons.infinite_triangulation(shifted, [gons.Zigzag(c)])


def infgon_to_strip(t: gons.GonTriangulation) -> ClusterRep:
    """Strip image over raw integer coordinates; unit-gap tilings everywhere,
    no rays except at fountains."""
    if t.arena != gons.INFINITE:
        raise ValueError("infinity-gon triangulation expected")
    vmap = IntegerVertexMap()
    explicit = {_image_of_diagonal(vmap, d) for d in t.explicit}
    report = gons.classify_fountains(t)
    if report.kind != gons.LOCALLY_FINITE:
        explicit.add(iv.left_ray(report.left, False))
        explicit.add(iv.left_ray(report.right, False))
    families = (AllIntegerGapTilings(),) + tuple(_mapped_tail(vmap, tl) for tl in t.tails)
    return ClusterRep(STRAIGHT_DESCENDING, frozenset(explicit), families)


# -- probes and the commutativity harness ------------------------------------------


def line_probes(seq: AnchorSequence, rng: random.Random, count: int = 240) -> list[IntervalIndec]:
    """A spread of membership probes: anchor-gap cells and non-cells, outer
    cells, singletons, rays, anchored open intervals, and the full line."""
    probes: list[IntervalIndec] = [iv.whole_line(), iv.open_iv(seq.lo, seq.hi)]
    idxs = list(range(-4, 8))
    for i in idxs:
        for j in idxs:
            if i < j:
                probes.append(iv.open_iv(seq.value(i), seq.value(j)))
    for i in (-2, -1, 0, 1, 2):
        lo, hi = seq.value(i), seq.value(i + 1)
        w = hi - lo
        for depth in (0, 1, 2, 3):
            j = rng.randrange(0, 2 ** depth)
            probes.append(iv.open_iv(lo + j * w / 2 ** depth, lo + (j + 1) * w / 2 ** depth))
        probes.append(iv.open_iv(lo + w / 8, lo + 3 * w / 8))
        probes.append(iv.closed(lo + w / 4, lo + w / 2))
        probes.append(iv.singleton(lo + w / 3))
        probes.append(iv.singleton(lo + w / 4))
        probes.append(iv.open_iv(seq.lo, seq.value(i)))
        probes.append(iv.open_iv(seq.value(i), seq.hi))
    for g in (-3, -2, -1, 1, 2, 3):
        lo = Fraction(g)
        for depth in (0, 1, 2):
            j = rng.randrange(0, 2 ** depth)
            probes.append(iv.open_iv(lo + Fraction(j, 2 ** depth), lo + Fraction(j + 1, 2 ** depth)))
        probes.append(iv.singleton(lo + Fraction(1, 3)))
    for j in range(-4, 6):
        probes.append(iv.left_ray(j, True))
        probes.append(iv.left_ray(j, False))
        probes.append(iv.right_ray(j, True))
        if j > seq.hi:
            probes.append(iv.open_iv(seq.lo, Fraction(j)))
        elif j < seq.lo:
            probes.append(iv.open_iv(Fraction(j), seq.hi))
    while len(probes) < count:
        a = Fraction(rng.randrange(-40, 40), 8)
        b = a + Fraction(rng.randrange(1, 24), 8)
        probes.append(iv.open_iv(a, b))
    return probes


def reps_agree(r1: ClusterRep, r2: ClusterRep, probes: Iterable[IntervalIndec]) -> Optional[IntervalIndec]:
    """First probe on which the two representations disagree, else None."""
    for p in probes:
        if r1.member(p) != r2.member(p):
            return p
    return None


def check_commutativity(
    t: gons.GonTriangulation,
    n: int,
    seq: AnchorSequence = DEFAULT_ANCHORS,
    rng: Optional[random.Random] = None,
    probes: Optional[list[IntervalIndec]] = None,
) -> dict:
    """Verify every route from an (m+3)-gon triangulation to the line agrees.

    Raises MismatchError naming the witnessing probe on failure.
    """
    rng = rng or random.Random(7)
    m = t.n
    if probes is None:
        probes = line_probes(seq, rng)
    direct = polygon_to_line(t, seq)
    t_n = extend_polygon_to(t, n)
    routes = {
        "via_polygon": polygon_to_line(t_n, seq),
        "via_infgon": infgon_to_line(polygon_to_infgon(t_n), seq),
        "via_completed": completed_to_line(complete_infgon(polygon_to_infgon(t_n)), seq),
    }
    for name, rep in routes.items():
        witness = reps_agree(direct, rep, probes)
        if witness is not None:
            raise MismatchError(
                f"route {name} for m={m}, n={n} disagrees at probe {witness}: "
                f"direct={direct.member(witness)} route={rep.member(witness)}"
            )
    # Strip leg: the composite through the strip is pinned to the completed
    # image, so every strip-side member must already sit in it.
    completed = complete_infgon(polygon_to_infgon(t_n))
    strip = completed_to_strip(completed, seq)
    via_completed = routes["via_completed"]
    for p in probes:
        if strip.member(p) and not via_completed.member(p):
            raise MismatchError(f"strip member {p} missing from the completed-route image")
    return {"m": m, "n": n, "probes": len(probes), "routes": sorted(routes)}


def gon_probe_diagonals(radius: int = 8) -> list[gons.Diagonal]:
    out = []
    for i in range(-radius, radius + 1):
        for j in range(i + 2, radius + 1):
            out.append(gons.Diagonal(i, j))
        out.append(gons.adic(i))
        out.append(gons.prufer(i))
    return out


def check_centered_chain(t: gons.GonTriangulation, n: int) -> dict:
    """The centered chain commutes: polygon -> (n+3)-gon -> infinity-gon equals
    the direct centered embedding, extensionally on a diagonal window."""
    direct = centered_polygon_to_infgon(t)
    routed = centered_polygon_to_infgon(centered_extend_polygon_to(t, n))
    for d in gon_probe_diagonals():
        if direct.contains(d) != routed.contains(d):
            raise MismatchError(
                f"centered chain m={t.n}, n={n} disagrees at {d}: "
                f"direct={direct.contains(d)} routed={routed.contains(d)}"
            )
    return {"m": t.n, "n": n}
