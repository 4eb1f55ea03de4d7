"""Interval indecomposables: intervals with endpoint-membership flags.

An `IntervalIndec` stands for the indecomposable supported on an interval of
the line.  Endpoint flags record whether the endpoint belongs to the support;
infinite endpoints are always excluded.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .numbers import NEG_INF, POS_INF, Ext, as_ext
from .quiver import QuiverTypeA


@dataclass(frozen=True)
class IntervalIndec:
    lower: Ext
    lower_in: bool
    upper: Ext
    upper_in: bool

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError("lower endpoint exceeds upper endpoint")
        if self.lower == self.upper and not (self.lower_in and self.upper_in):
            raise ValueError("a singleton interval must contain its point")
        if self.lower == POS_INF or self.upper == NEG_INF:
            raise ValueError("degenerate interval at infinity")
        if self.lower == NEG_INF and self.lower_in:
            raise ValueError("-inf cannot belong to the interval")
        if self.upper == POS_INF and self.upper_in:
            raise ValueError("+inf cannot belong to the interval")

    @property
    def is_singleton(self) -> bool:
        return self.lower == self.upper

    def contains(self, x) -> bool:
        x = as_ext(x)
        if not x.finite:
            return False
        above = x > self.lower or (x == self.lower and self.lower_in)
        below = x < self.upper or (x == self.upper and self.upper_in)
        return above and below

    def __str__(self) -> str:
        if self.is_singleton:
            return "{%s}" % self.lower
        lo = "[" if self.lower_in else "("
        hi = "]" if self.upper_in else ")"
        return f"{lo}{self.lower},{self.upper}{hi}"

    def __repr__(self) -> str:
        return f"IntervalIndec({self})"

    def sort_key(self):
        return (lam_key(self), ups_key(self))


# -- constructors ----------------------------------------------------------


def interval(lower, lower_in: bool, upper, upper_in: bool) -> IntervalIndec:
    return IntervalIndec(as_ext(lower), lower_in, as_ext(upper), upper_in)


def closed(a, b) -> IntervalIndec:
    return interval(a, True, b, True)


def open_iv(a, b) -> IntervalIndec:
    return interval(a, False, b, False)


def half_open(a, b) -> IntervalIndec:
    """[a, b)"""
    return interval(a, True, b, False)


def half_closed(a, b) -> IntervalIndec:
    """(a, b]"""
    return interval(a, False, b, True)


def singleton(a) -> IntervalIndec:
    return interval(a, True, a, True)


def left_ray(b, closed_end: bool) -> IntervalIndec:
    """(-inf, b] or (-inf, b)"""
    return interval(NEG_INF, False, b, closed_end)


def right_ray(a, closed_end: bool) -> IntervalIndec:
    """[a, +inf) or (a, +inf)"""
    return interval(a, closed_end, POS_INF, False)


def whole_line() -> IntervalIndec:
    return interval(NEG_INF, False, POS_INF, False)


_INTERVAL_RE = re.compile(r"^\s*([\[\(\{])\s*([^,\}]+?)\s*(?:,\s*([^\]\)\}]+?)\s*)?([\]\)\}])\s*$")


def parse_interval(s: str) -> IntervalIndec:
    """Parse "[0,1)", "(-inf,3]", "{2}" with exact rational endpoints."""
    m = _INTERVAL_RE.match(s)
    if not m:
        raise ValueError(f"cannot parse interval {s!r}")
    lo_br, lo_s, hi_s, hi_br = m.groups()
    if lo_br == "{":
        if hi_br != "}" or hi_s is not None:
            raise ValueError(f"cannot parse interval {s!r}")
        return singleton(as_ext(lo_s))
    if hi_s is None:
        raise ValueError(f"cannot parse interval {s!r}")
    return interval(as_ext(lo_s), lo_br == "[", as_ext(hi_s), hi_br == "]")


# -- straight-orientation compatibility oracle ------------------------------
#
# Deliberately computed on interval data alone, with no reference to the arc
# model: the two code paths cross-validate each other.


def lam_key(m: IntervalIndec) -> tuple[Ext, int]:
    """Lower-endpoint sort key; second slot 0 when the endpoint is in."""
    return (m.lower, 0 if m.lower_in else 1)


def ups_key(m: IntervalIndec) -> tuple[Ext, int]:
    """Upper-endpoint sort key; second slot 1 when the endpoint is in."""
    return (m.upper, 1 if m.upper_in else 0)


def _key_lt(a, b) -> bool:
    return a[0] < b[0] or (a[0] == b[0] and a[1] < b[1])


def _key_le(a, b) -> bool:
    return not _key_lt(b, a)


def straight_compat_oracle(m1: IntervalIndec, m2: IntervalIndec) -> bool:
    """Compatibility of two intervals over the straight descending quiver.

    Incompatible exactly when the endpoint keys interleave, with the middle
    comparison non-strict: lam1 < lam2 <= ups1 < ups2 (or symmetrically).
    """
    l1, u1 = lam_key(m1), ups_key(m1)
    l2, u2 = lam_key(m2), ups_key(m2)
    if _key_lt(l1, l2) and _key_le(l2, u1) and _key_lt(u1, u2):
        return False
    if _key_lt(l2, l1) and _key_le(l1, u2) and _key_lt(u2, u1):
        return False
    return True


# -- projective / injective classification ---------------------------------


@dataclass(frozen=True)
class ProjClass:
    shape: str  # "P" | "P_OPEN_LOW" | "P_OPEN_HIGH"
    anchor: Ext


def _downset_interval(q: QuiverTypeA, a: Ext) -> Optional[IntervalIndec]:
    d = q.downset(a)
    if d is None:
        return None
    lo, lo_in, hi, hi_in = d
    return IntervalIndec(lo, lo_in, hi, hi_in)


def classify_projective(q: QuiverTypeA, m: IntervalIndec) -> Optional[ProjClass]:
    """Which projective shape m is over q, or None.

    Shapes, for an anchor a: the full downset of a; the part of it strictly
    above a; the part strictly below a.
    """
    candidates: list[Ext] = [NEG_INF, POS_INF]
    candidates += [Ext(mk.pos) for mk in q.markers]
    for e in (m.lower, m.upper):
        if e not in candidates:
            candidates.append(e)
    for a in candidates:
        d = q.downset(a)
        if d is None:
            continue
        lo, lo_in, hi, hi_in = d
        full = IntervalIndec(lo, lo_in, hi, hi_in)
        if m == full:
            return ProjClass("P", a)
        if a < hi:
            try:
                part = IntervalIndec(a, False, hi, hi_in)
            except ValueError:
                part = None
            if part is not None and m == part:
                return ProjClass("P_OPEN_LOW", a)
        if lo < a:
            try:
                part = IntervalIndec(lo, lo_in, a, False)
            except ValueError:
                part = None
            if part is not None and m == part:
                return ProjClass("P_OPEN_HIGH", a)
    return None


def classify_injective(q: QuiverTypeA, m: IntervalIndec) -> Optional[ProjClass]:
    """Injectives are the projectives of the reversed quiver."""
    c = classify_projective(q.reverse(), m)
    if c is None:
        return None
    shape = {"P": "I", "P_OPEN_LOW": "I_OPEN_LOW", "P_OPEN_HIGH": "I_OPEN_HIGH"}[c.shape]
    return ProjClass(shape, c.anchor)
