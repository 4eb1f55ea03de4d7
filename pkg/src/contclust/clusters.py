"""Finitely-described compatible sets: explicit members plus member families.

A cluster representation is a finite explicit set of interval indecomposables
together with family descriptors (dyadic tilings, singleton families, ray
families) whose membership and compatibility questions are decided in closed
form.  Every closed-form decider is regression-tested against brute-force
truncation in the test suite.

Families are only used over the straight descending orientation, where the
endpoint-key encoding of intervals makes each decision a window computation.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence

from . import intervals as iv
from .arcs import e_compatible
from .intervals import IntervalIndec
from .numbers import NEG_INF, POS_INF, Ext, as_ext, dyadic_depth
from .quiver import QuiverTypeA


class UnsupportedQueryError(ValueError):
    """Raised for compatibility queries outside a decider's aligned domain."""


class FrozenMemberError(RuntimeError):
    pass


class AmbiguousMutationError(RuntimeError):
    pass


def _cross(m1: IntervalIndec, m2: IntervalIndec) -> bool:
    return not iv.straight_compat_oracle(m1, m2)


NONE = "none"
FINITE = "finite"
INFINITE = "infinite"


@dataclass(frozen=True)
class CrossReport:
    """Which members of a family cross a query interval.

    kind "finite" carries the complete witness list; "infinite" carries a few
    samples of an infinite witness set.
    """

    kind: str
    members: tuple = ()

    @property
    def any(self) -> bool:
        return self.kind != NONE

    def without(self, excluded: frozenset) -> "CrossReport":
        if self.kind != FINITE:
            return self
        left = tuple(m for m in self.members if m not in excluded)
        return CrossReport(FINITE if left else NONE, left)


def _report(members: Sequence[IntervalIndec], infinite: bool) -> CrossReport:
    members = tuple(dict.fromkeys(members))
    if infinite:
        return CrossReport(INFINITE, members)
    return CrossReport(FINITE, members) if members else CrossReport(NONE)


# -- window helpers -----------------------------------------------------------


@dataclass(frozen=True)
class _Window:
    """A rational interval with closure flags, used for witness windows."""

    lo: Ext
    lo_in: bool
    hi: Ext
    hi_in: bool

    def intersect_open(self, lo: Ext, hi: Ext) -> "_Window":
        w = self
        if lo > w.lo or (lo == w.lo and w.lo_in):
            w = _Window(lo, False, w.hi, w.hi_in)
        if hi < w.hi or (hi == w.hi and w.hi_in):
            w = _Window(w.lo, w.lo_in, hi, False)
        return w

    @property
    def empty(self) -> bool:
        if self.lo > self.hi:
            return True
        if self.lo == self.hi:
            return not (self.lo_in and self.hi_in and self.lo.finite)
        return False

    @property
    def single(self) -> Optional[Ext]:
        if not self.empty and self.lo == self.hi:
            return self.lo
        return None

    def sample_points(self, k: int = 2) -> list[Fraction]:
        if self.empty:
            return []
        s = self.single
        if s is not None:
            return [s.value]
        lo = self.lo.value if self.lo.finite else (self.hi.value - 8 if self.hi.finite else Fraction(-8))
        hi = self.hi.value if self.hi.finite else (self.lo.value + 8 if self.lo.finite else Fraction(8))
        pts = [lo + (hi - lo) * Fraction(t, k + 1) for t in range(1, k + 1)]
        return [p for p in pts if self.contains(p)]

    def contains(self, x: Fraction) -> bool:
        e = Ext(x)
        above = e > self.lo or (e == self.lo and self.lo_in)
        below = e < self.hi or (e == self.hi and self.hi_in)
        return above and below


def _interval_window(m: IntervalIndec) -> _Window:
    """Window of x such that (a,fa) <= (x,0) and (x,0) < (b,fb)."""
    return _Window(m.lower, m.lower_in, m.upper, m.upper_in)


# -- family descriptors --------------------------------------------------------


@dataclass(frozen=True)
class DyadicTiling:
    """Open dyadic subdivision cells of the base interval (l, r)."""

    l: Fraction
    r: Fraction

    def __post_init__(self):
        if not self.l < self.r:
            raise ValueError("need l < r")

    @property
    def width(self) -> Fraction:
        return self.r - self.l

    def cell(self, depth: int, j: int) -> IntervalIndec:
        w = self.width
        return iv.open_iv(self.l + j * w / 2 ** depth, self.l + (j + 1) * w / 2 ** depth)

    def _rel(self, x: Fraction) -> Fraction:
        return (x - self.l) / self.width

    def _rel_depth(self, e: Ext) -> Optional[int]:
        """Depth of a strictly-inside endpoint, None when not dyadic-aligned."""
        return dyadic_depth(self._rel(e.value))

    def _inside(self, e: Ext) -> bool:
        return e.finite and Ext(self.l) < e < Ext(self.r)

    def contains(self, m: IntervalIndec) -> bool:
        if m.lower_in or m.upper_in or not (m.lower.finite and m.upper.finite):
            return False
        if m.lower < Ext(self.l) or m.upper > Ext(self.r):
            return False
        t1, t2 = self._rel(m.lower.value), self._rel(m.upper.value)
        delta = t2 - t1
        if delta.numerator != 1:
            return False
        depth = dyadic_depth(delta)
        if depth is None:
            return False
        j = t1 * 2 ** depth
        return j.denominator == 1 and 0 <= j < 2 ** depth

    def cross_witnesses(self, m: IntervalIndec) -> CrossReport:
        depths = []
        for e in (m.lower, m.upper):
            if self._inside(e):
                d = self._rel_depth(e)
                if d is None:
                    if m.is_singleton:
                        return CrossReport(NONE)
                    raise UnsupportedQueryError(
                        f"endpoint {e} of {m} is not dyadic-aligned in ({self.l},{self.r})"
                    )
                depths.append(d)
        cap = max(depths, default=0) + 1
        witnesses = []
        # At each depth a crossing cell must start just below m's top or end
        # just above m's bottom, so only a couple of j's can ever qualify.
        for depth in range(cap + 1):
            step = self.width / 2 ** depth
            js: set[int] = set()
            if m.upper.finite:
                q = (m.upper.value - self.l) / step
                base = q.__floor__()
                js.update((base - 1, base, base + 1))
            if m.lower.finite:
                q = (m.lower.value - self.l) / step - 1
                base = q.__floor__()
                js.update((base, base + 1, base + 2))
            for j in js:
                if 0 <= j < 2 ** depth:
                    c = self.cell(depth, j)
                    if _cross(m, c):
                        witnesses.append(c)
        # Boundary contacts recur at every depth: cells starting exactly at a
        # closed upper endpoint, or ending exactly at a closed lower endpoint.
        infinite = False
        b = m.upper
        if m.upper_in and b.finite and Ext(self.l) <= b < Ext(self.r):
            if dyadic_depth(self._rel(b.value)) is not None:
                infinite = True
        a = m.lower
        if m.lower_in and a.finite and Ext(self.l) < a <= Ext(self.r):
            if dyadic_depth(self._rel(a.value)) is not None:
                infinite = True
        return _report(witnesses, infinite)

    def truncated(self, depth: int) -> Iterator[IntervalIndec]:
        for d in range(depth + 1):
            for j in range(2 ** d):
                yield self.cell(d, j)

    def sample(self, rng: random.Random, k: int) -> list[IntervalIndec]:
        out = []
        for _ in range(k):
            d = rng.randrange(0, 6)
            out.append(self.cell(d, rng.randrange(0, 2 ** d)))
        return out

    def candidate_points(self, m: IntervalIndec) -> set[Fraction]:
        """Subdivision points relevant to swapping a member near m."""
        near = [e for e in (m.lower, m.upper) if e.finite and Ext(self.l) <= e <= Ext(self.r)]
        if not near:
            return set()
        depth = 0
        for e in near:
            if Ext(self.l) < e < Ext(self.r):
                d = self._rel_depth(e)
                if d is not None:
                    depth = max(depth, d)
        depth = min(depth + 2, 8)
        w = self.width
        return {self.l + j * w / 2 ** depth for j in range(2 ** depth + 1)}

    def to_json_dict(self) -> dict:
        return {"kind": "dyadic_tiling", "l": str(self.l), "r": str(self.r)}


def _non_dyadic_fractions() -> list[Fraction]:
    return [Fraction(a, b) for b in (3, 5, 7, 9, 11) for a in range(1, b) if Fraction(a, b) != 0]


@dataclass(frozen=True)
class SingletonComplement:
    """Singletons in (l, r) away from the dyadic subdivision points."""

    l: Fraction
    r: Fraction

    def __post_init__(self):
        if not self.l < self.r:
            raise ValueError("need l < r")

    def _rel(self, x: Fraction) -> Fraction:
        return (x - self.l) / (self.r - self.l)

    def contains(self, m: IntervalIndec) -> bool:
        if not m.is_singleton or not m.lower.finite:
            return False
        x = m.lower.value
        if not (self.l < x < self.r):
            return False
        return dyadic_depth(self._rel(x)) is None

    def cross_witnesses(self, m: IntervalIndec) -> CrossReport:
        # A singleton {x} crosses m exactly at an open finite endpoint of m;
        # such an x is a member only when it is not dyadic-aligned.
        witnesses = []
        if not m.is_singleton:
            for e, is_in in ((m.lower, m.lower_in), (m.upper, m.upper_in)):
                if is_in or not e.finite or not (self.l < e.value < self.r):
                    continue
                if dyadic_depth(self._rel(e.value)) is None:
                    raise UnsupportedQueryError(
                        f"endpoint {e} of {m} is not dyadic-aligned in ({self.l},{self.r})"
                    )
        return _report(witnesses, False)

    def sample(self, rng: random.Random, k: int) -> list[IntervalIndec]:
        w = self.r - self.l
        pool = _non_dyadic_fractions()
        return [iv.singleton(self.l + w * rng.choice(pool)) for _ in range(k)]

    def truncated(self, depth: int) -> Iterator[IntervalIndec]:
        w = self.r - self.l
        for q in _non_dyadic_fractions():
            yield iv.singleton(self.l + w * q)

    def to_json_dict(self) -> dict:
        return {"kind": "singleton_complement", "l": str(self.l), "r": str(self.r)}


@dataclass(frozen=True)
class SingletonRange:
    """All singletons strictly inside an (extended) open range."""

    lo: Ext
    hi: Ext

    def __post_init__(self):
        object.__setattr__(self, "lo", as_ext(self.lo))
        object.__setattr__(self, "hi", as_ext(self.hi))
        if not self.lo < self.hi:
            raise ValueError("need lo < hi")

    def contains(self, m: IntervalIndec) -> bool:
        return m.is_singleton and self.lo < m.lower < self.hi

    def cross_witnesses(self, m: IntervalIndec) -> CrossReport:
        witnesses = []
        if not m.is_singleton:
            if not m.upper_in and m.upper.finite and self.lo < m.upper < self.hi:
                witnesses.append(iv.singleton(m.upper.value))
            if not m.lower_in and m.lower.finite and self.lo < m.lower < self.hi:
                witnesses.append(iv.singleton(m.lower.value))
        return _report(witnesses, False)

    def _window(self) -> tuple[Fraction, Fraction]:
        lo = self.lo.value if self.lo.finite else (self.hi.value - 16 if self.hi.finite else Fraction(-16))
        hi = self.hi.value if self.hi.finite else (self.lo.value + 16 if self.lo.finite else Fraction(16))
        return lo, hi

    def sample(self, rng: random.Random, k: int) -> list[IntervalIndec]:
        lo, hi = self._window()
        out = []
        for _ in range(k):
            x = lo + (hi - lo) * Fraction(rng.randrange(1, 64), 64)
            out.append(iv.singleton(x))
        return out

    def truncated(self, depth: int) -> Iterator[IntervalIndec]:
        lo, hi = self._window()
        for t in range(1, 32):
            yield iv.singleton(lo + (hi - lo) * Fraction(t, 32))

    def to_json_dict(self) -> dict:
        return {"kind": "singleton_range", "lo": str(self.lo), "hi": str(self.hi)}


@dataclass(frozen=True)
class LeftRay:
    """Rays (-inf, x) or (-inf, x] with x inside an open range."""

    closed: bool
    lo: Ext
    hi: Ext

    def __post_init__(self):
        object.__setattr__(self, "lo", as_ext(self.lo))
        object.__setattr__(self, "hi", as_ext(self.hi))
        if not self.lo < self.hi:
            raise ValueError("need lo < hi")

    def member(self, x) -> IntervalIndec:
        return iv.left_ray(x, self.closed)

    def contains(self, m: IntervalIndec) -> bool:
        return (
            m.lower == NEG_INF
            and m.upper.finite
            and m.upper_in == self.closed
            and self.lo < m.upper < self.hi
        )

    def _witness_window(self, m: IntervalIndec) -> _Window:
        if not m.lower.finite:
            return _Window(Ext(0), False, Ext(0), False)  # empty: nested rays
        if self.closed:
            w = _Window(m.lower, True, m.upper, False)
        else:
            w = _interval_window(m)
        return w.intersect_open(self.lo, self.hi)

    def cross_witnesses(self, m: IntervalIndec) -> CrossReport:
        w = self._witness_window(m)
        if w.empty:
            return CrossReport(NONE)
        s = w.single
        if s is not None:
            return _report([self.member(s.value)], False)
        return _report([self.member(x) for x in w.sample_points()], True)

    def sample(self, rng: random.Random, k: int) -> list[IntervalIndec]:
        lo = self.lo.value if self.lo.finite else (self.hi.value - 16 if self.hi.finite else Fraction(-16))
        hi = self.hi.value if self.hi.finite else (self.lo.value + 16 if self.lo.finite else Fraction(16))
        return [self.member(lo + (hi - lo) * Fraction(rng.randrange(1, 64), 64)) for _ in range(k)]

    def truncated(self, depth: int) -> Iterator[IntervalIndec]:
        lo = self.lo.value if self.lo.finite else (self.hi.value - 16 if self.hi.finite else Fraction(-16))
        hi = self.hi.value if self.hi.finite else (self.lo.value + 16 if self.lo.finite else Fraction(16))
        for t in range(1, 32):
            yield self.member(lo + (hi - lo) * Fraction(t, 32))

    def to_json_dict(self) -> dict:
        return {"kind": "left_ray", "closed": self.closed, "lo": str(self.lo), "hi": str(self.hi)}


@dataclass(frozen=True)
class RightRay:
    """Rays [x, +inf) or (x, +inf) with x inside an open range."""

    closed: bool
    lo: Ext
    hi: Ext

    def __post_init__(self):
        object.__setattr__(self, "lo", as_ext(self.lo))
        object.__setattr__(self, "hi", as_ext(self.hi))
        if not self.lo < self.hi:
            raise ValueError("need lo < hi")

    def member(self, x) -> IntervalIndec:
        return iv.right_ray(x, self.closed)

    def contains(self, m: IntervalIndec) -> bool:
        return (
            m.upper == POS_INF
            and m.lower.finite
            and m.lower_in == self.closed
            and self.lo < m.lower < self.hi
        )

    def _witness_window(self, m: IntervalIndec) -> _Window:
        if not m.upper.finite:
            return _Window(Ext(0), False, Ext(0), False)
        if self.closed:
            w = _Window(m.lower, False, m.upper, True)
        else:
            w = _interval_window(m)
        return w.intersect_open(self.lo, self.hi)

    def cross_witnesses(self, m: IntervalIndec) -> CrossReport:
        w = self._witness_window(m)
        if w.empty:
            return CrossReport(NONE)
        s = w.single
        if s is not None:
            return _report([self.member(s.value)], False)
        return _report([self.member(x) for x in w.sample_points()], True)

    def sample(self, rng: random.Random, k: int) -> list[IntervalIndec]:
        lo = self.lo.value if self.lo.finite else (self.hi.value - 16 if self.hi.finite else Fraction(-16))
        hi = self.hi.value if self.hi.finite else (self.lo.value + 16 if self.lo.finite else Fraction(16))
        return [self.member(lo + (hi - lo) * Fraction(rng.randrange(1, 64), 64)) for _ in range(k)]

    def truncated(self, depth: int) -> Iterator[IntervalIndec]:
        lo = self.lo.value if self.lo.finite else (self.hi.value - 16 if self.hi.finite else Fraction(-16))
        hi = self.hi.value if self.hi.finite else (self.lo.value + 16 if self.lo.finite else Fraction(16))
        for t in range(1, 32):
            yield self.member(lo + (hi - lo) * Fraction(t, 32))

    def to_json_dict(self) -> dict:
        return {"kind": "right_ray", "closed": self.closed, "lo": str(self.lo), "hi": str(self.hi)}


def compatible_with_family(q: QuiverTypeA, m: IntervalIndec, f) -> bool:
    """True when m is compatible with every member of the family."""
    if not q.is_straight:
        raise UnsupportedQueryError("families are defined over the straight orientation")
    return not f.cross_witnesses(m).any


# -- cluster representations ----------------------------------------------------


@dataclass(frozen=True)
class ClusterRep:
    quiver: QuiverTypeA
    explicit: frozenset = frozenset()
    families: tuple = ()
    excluded: frozenset = frozenset()

    def member(self, m: IntervalIndec) -> bool:
        if m in self.explicit:
            return True
        if m in self.excluded:
            return False
        return any(f.contains(m) for f in self.families)

    def family_conflicts(self, m: IntervalIndec) -> bool:
        for f in self.families:
            if f.cross_witnesses(m).without(self.excluded).any:
                return True
        return False

    def compatible_with_all(self, m: IntervalIndec) -> bool:
        for e in self.explicit:
            if e != m and not e_compatible(self.quiver, m, e):
                return False
        return not self.family_conflicts(m)

    def probe_maximal(self, probes: Iterable[IntervalIndec]) -> bool:
        return all(self.member(p) or not self.compatible_with_all(p) for p in probes)

    def probe_failures(self, probes: Iterable[IntervalIndec]) -> list[IntervalIndec]:
        return [p for p in probes if not self.member(p) and self.compatible_with_all(p)]

    def sample_members(self, rng: random.Random, k: int) -> list[IntervalIndec]:
        pool = list(self.explicit)
        for f in self.families:
            pool.extend(x for x in f.sample(rng, max(2, k // max(1, len(self.families)))) if x not in self.excluded)
        rng.shuffle(pool)
        return pool[:k] if k < len(pool) else pool

    def with_swap(self, out_m: IntervalIndec, in_m: IntervalIndec) -> "ClusterRep":
        explicit = set(self.explicit)
        excluded = set(self.excluded)
        if out_m in explicit:
            explicit.remove(out_m)
        elif self.member(out_m):
            excluded.add(out_m)
        else:
            raise KeyError(f"{out_m} is not a member")
        explicit.add(in_m)
        excluded.discard(in_m)
        return ClusterRep(self.quiver, frozenset(explicit), self.families, frozenset(excluded))

    def verify_internal(self, rng: random.Random, pair_samples: int = 200) -> None:
        ex = sorted(self.explicit, key=lambda m: m.sort_key())
        for i in range(len(ex)):
            for j in range(i + 1, len(ex)):
                if not e_compatible(self.quiver, ex[i], ex[j]):
                    raise ValueError(f"explicit members cross: {ex[i]} and {ex[j]}")
        for e in ex:
            if self.family_conflicts(e):
                raise ValueError(f"explicit member {e} crosses a family")
        members = self.sample_members(rng, pair_samples)
        for m in members:
            other = members[rng.randrange(len(members))]
            if m != other and not e_compatible(self.quiver, m, other):
                raise ValueError(f"sampled members cross: {m} and {other}")

    def to_json_dict(self) -> dict:
        return {
            "quiver": self.quiver.to_json_dict(),
            "explicit": sorted(str(m) for m in self.explicit),
            "families": [f.to_json_dict() for f in self.families],
            "excluded": sorted(str(m) for m in self.excluded),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


# -- mutation ---------------------------------------------------------------------


def default_candidates(c: ClusterRep, x: IntervalIndec) -> list[IntervalIndec]:
    """Candidate replacements: intervals over the endpoint closure of the
    explicit part, refined dyadically around x, with the infinite ends."""
    points: set[Fraction] = set()
    for m in list(c.explicit) + [x]:
        for e in (m.lower, m.upper):
            if e.finite:
                points.add(e.value)
    for f in c.families:
        hook = getattr(f, "candidate_points", None)
        if hook is not None:
            points.update(hook(x))
    vals = sorted(points)
    out: list[IntervalIndec] = []
    for a in vals:
        out.append(iv.singleton(a))
        out.append(iv.left_ray(a, True))
        out.append(iv.left_ray(a, False))
        out.append(iv.right_ray(a, True))
        out.append(iv.right_ray(a, False))
        for b in vals:
            if a < b:
                for li in (True, False):
                    for ui in (True, False):
                        out.append(iv.interval(a, li, b, ui))
    out.append(iv.whole_line())
    return out


def mutate(
    c: ClusterRep,
    x: IntervalIndec,
    candidates: Optional[Iterable[IntervalIndec]] = None,
    probes: Optional[Sequence[IntervalIndec]] = None,
) -> tuple[ClusterRep, IntervalIndec]:
    """Exchange x for the unique incompatible partner keeping a cluster.

    Raises FrozenMemberError when no candidate works and
    AmbiguousMutationError when several distinct ones do (a rule bug).
    """
    if not c.member(x):
        raise KeyError(f"{x} is not a member")
    if candidates is None:
        candidates = default_candidates(c, x)
    if x in c.explicit:
        removed = ClusterRep(c.quiver, c.explicit - {x}, c.families, c.excluded)
    else:
        removed = ClusterRep(c.quiver, c.explicit, c.families, c.excluded | {x})
    winners = []
    for y in candidates:
        if y == x or e_compatible(c.quiver, x, y):
            continue
        if removed.member(y):
            continue
        if removed.compatible_with_all(y):
            winners.append(y)
    winners = list(dict.fromkeys(winners))
    if not winners:
        raise FrozenMemberError(f"{x} has no replacement among the candidates")
    if len(winners) > 1:
        raise AmbiguousMutationError(f"{x} has several replacements: {winners[:4]}")
    y = winners[0]
    result = c.with_swap(x, y)
    if probes is not None and not result.probe_maximal(probes):
        raise ValueError("mutated representation fails probe maximality")
    return result, y
