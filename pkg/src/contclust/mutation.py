"""Continuous mutation: time-indexed member swaps, paths, and reachability.

A schedule swaps a parametrized family of members against an incompatible
replacement family, one exchange per clock value; every prefix of the swap is
again a compatible set.  Times are floating point (the clocks are arctan
shaped) while all member data stays exact: the frontier of a prefix is
recovered by inverting the clock and snapping to a rational, so schedules
expose exact members at rational-friendly sample times and documented
approximations elsewhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from . import clusters as cl
from . import gons
from . import intervals as iv
from .clusters import ClusterRep
from .intervals import IntervalIndec
from .numbers import NEG_INF, POS_INF, Ext
from .quiver import STRAIGHT_DESCENDING

SNAP_DENOMINATOR = 10 ** 9
CLOCK_TOL = 1e-9


class ChainMismatchError(ValueError):
    pass


class EndpointMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class SwapChannel:
    """One x-parametrized exchange lane of a continuous mutation.

    The clock is a strictly monotone map from the x-line onto the open time
    range (t_lo, t_hi); out_of(x) leaves the cluster at its clock time and
    in_of(x) enters in its place.
    """

    out_of: Callable[[Fraction], IntervalIndec]
    in_of: Callable[[Fraction], IntervalIndec]
    out_family: Callable[[Ext, Ext], object]
    in_family: Callable[[Ext, Ext], object]
    clock: Callable[[float], float]
    clock_inverse: Callable[[float], float]
    t_lo: float
    t_hi: float
    increasing: bool

    def frontier(self, t: float) -> Fraction:
        return Fraction(self.clock_inverse(t)).limit_denominator(SNAP_DENOMINATOR)

    def pieces(self, t: float, inclusive: bool):
        """(families, explicit) representing this channel's state at time t."""
        if t <= self.t_lo:
            return [self.out_family(NEG_INF, POS_INF)], []
        if t >= self.t_hi:
            return [self.in_family(NEG_INF, POS_INF)], []
        x = self.frontier(t)
        ex = Ext(x)
        t_star = self.clock(float(x))
        if abs(t_star - t) <= CLOCK_TOL:
            swapped = inclusive
        else:
            swapped = t_star < t
        boundary = self.in_of(x) if swapped else self.out_of(x)
        if self.increasing:
            fams = [self.in_family(NEG_INF, ex), self.out_family(ex, POS_INF)]
        else:
            fams = [self.out_family(NEG_INF, ex), self.in_family(ex, POS_INF)]
        return fams, [boundary]


@dataclass(frozen=True)
class ContinuousSchedule:
    quiver: object
    static_explicit: frozenset
    static_families: tuple
    channels: tuple

    @property
    def source(self) -> ClusterRep:
        fams = self.static_families + tuple(
            ch.out_family(NEG_INF, POS_INF) for ch in self.channels
        )
        return ClusterRep(self.quiver, self.static_explicit, fams)

    @property
    def target(self) -> ClusterRep:
        fams = self.static_families + tuple(
            ch.in_family(NEG_INF, POS_INF) for ch in self.channels
        )
        return ClusterRep(self.quiver, self.static_explicit, fams)

    def cluster_at(self, t: float, inclusive: bool) -> ClusterRep:
        """The prefix cluster after performing all swaps with clock in
        [0, t) (exclusive) or [0, t] (inclusive)."""
        if not 0.0 <= t <= 1.0:
            raise ValueError("time must lie in [0, 1]")
        explicit = set(self.static_explicit)
        fams = list(self.static_families)
        for ch in self.channels:
            f, ex = ch.pieces(t, inclusive)
            fams.extend(f)
            explicit.update(ex)
        return ClusterRep(self.quiver, frozenset(explicit), tuple(fams))

    def step_at(self, t: float):
        """("trivial",) or ("mutation", outgoing, incoming) at time t."""
        for ch in self.channels:
            if ch.t_lo < t < ch.t_hi:
                x = ch.frontier(t)
                if abs(ch.clock(float(x)) - t) <= CLOCK_TOL:
                    return ("mutation", ch.out_of(x), ch.in_of(x))
        return ("trivial",)

    def invert(self) -> "ContinuousSchedule":
        flipped = tuple(
            SwapChannel(
                out_of=ch.in_of,
                in_of=ch.out_of,
                out_family=ch.in_family,
                in_family=ch.out_family,
                clock=_compose_reverse(ch.clock),
                clock_inverse=_reverse_arg(ch.clock_inverse),
                t_lo=1.0 - ch.t_hi,
                t_hi=1.0 - ch.t_lo,
                increasing=not ch.increasing,
            )
            for ch in self.channels
        )
        return ContinuousSchedule(self.quiver, self.static_explicit, self.static_families, flipped)


def _compose_reverse(clock):
    return lambda x: 1.0 - clock(x)


def _reverse_arg(inverse):
    return lambda t: inverse(1.0 - t)


# -- the projectives-to-injectives schedules -----------------------------------


def _open_ray_clock(x: float) -> float:
    return 0.25 - math.atan(x) / (2 * math.pi)


def _open_ray_clock_inv(t: float) -> float:
    return math.tan(2 * math.pi * (0.25 - t))


def _closed_ray_clock(x: float) -> float:
    return 0.75 - math.atan(x) / (2 * math.pi)


def _closed_ray_clock_inv(t: float) -> float:
    return math.tan(2 * math.pi * (0.75 - t))


def _singleton_clock(x: float) -> float:
    return math.atan(x) / math.pi + 0.5


def _singleton_clock_inv(t: float) -> float:
    return math.tan(math.pi * (t - 0.5))


def projectives_cluster() -> ClusterRep:
    return ClusterRep(
        STRAIGHT_DESCENDING,
        frozenset([iv.whole_line()]),
        (cl.LeftRay(False, NEG_INF, POS_INF), cl.LeftRay(True, NEG_INF, POS_INF)),
    )


def middle_cluster() -> ClusterRep:
    return ClusterRep(
        STRAIGHT_DESCENDING,
        frozenset([iv.whole_line()]),
        (cl.SingletonRange(NEG_INF, POS_INF), cl.RightRay(True, NEG_INF, POS_INF)),
    )


def injectives_cluster() -> ClusterRep:
    return ClusterRep(
        STRAIGHT_DESCENDING,
        frozenset([iv.whole_line()]),
        (cl.RightRay(False, NEG_INF, POS_INF), cl.RightRay(True, NEG_INF, POS_INF)),
    )


def projectives_to_injectives_schedules() -> tuple[ContinuousSchedule, ContinuousSchedule]:
    """The two-stage schedule from the projectives to the injectives.

    Stage one retires each open ray (-inf, x) for the singleton {x} during
    (0, 1/2) and each closed ray (-inf, x] for the closed ray [x, +inf)
    during (1/2, 1); the closed-type clock runs half a turn later than the
    open-type one so the two lanes stay injective.  Stage two exchanges each
    singleton {x} for the open ray (x, +inf).
    """
    ch_open = SwapChannel(
        out_of=lambda x: iv.left_ray(x, False),
        in_of=lambda x: iv.singleton(x),
        out_family=lambda lo, hi: cl.LeftRay(False, lo, hi),
        in_family=lambda lo, hi: cl.SingletonRange(lo, hi),
        clock=_open_ray_clock,
        clock_inverse=_open_ray_clock_inv,
        t_lo=0.0,
        t_hi=0.5,
        increasing=False,
    )
    ch_closed = SwapChannel(
        out_of=lambda x: iv.left_ray(x, True),
        in_of=lambda x: iv.right_ray(x, True),
        out_family=lambda lo, hi: cl.LeftRay(True, lo, hi),
        in_family=lambda lo, hi: cl.RightRay(True, lo, hi),
        clock=_closed_ray_clock,
        clock_inverse=_closed_ray_clock_inv,
        t_lo=0.5,
        t_hi=1.0,
        increasing=False,
    )
    mu1 = ContinuousSchedule(
        STRAIGHT_DESCENDING, frozenset([iv.whole_line()]), (), (ch_open, ch_closed)
    )
    ch_single = SwapChannel(
        out_of=lambda x: iv.singleton(x),
        in_of=lambda x: iv.right_ray(x, False),
        out_family=lambda lo, hi: cl.SingletonRange(lo, hi),
        in_family=lambda lo, hi: cl.RightRay(False, lo, hi),
        clock=_singleton_clock,
        clock_inverse=_singleton_clock_inv,
        t_lo=0.0,
        t_hi=1.0,
        increasing=True,
    )
    mu2 = ContinuousSchedule(
        STRAIGHT_DESCENDING,
        frozenset([iv.whole_line()]),
        (cl.RightRay(True, NEG_INF, POS_INF),),
        (ch_single,),
    )
    return mu1, mu2


# -- the time warp --------------------------------------------------------------


@dataclass(frozen=True)
class TimeWarp:
    """Piecewise reparametrization spreading an integer-indexed sequence of
    mutations over (0, 1) with plateaus of relative width epsilon."""

    epsilon: float = 0.1

    def __post_init__(self):
        if not 0 < self.epsilon < 0.5:
            raise ValueError("epsilon must sit strictly between 0 and 1/2")

    def slot(self, s: float) -> int:
        """The integer i with atan-scale boundary a_i <= s < a_{i+1}."""
        if not 0 < s < 1:
            raise ValueError("interior times only")
        return math.floor(math.tan(math.pi * (s - 0.5)))

    def bounds(self, i: int) -> tuple[float, float]:
        a = math.atan(i) / math.pi + 0.5
        b = math.atan(i + 1) / math.pi + 0.5
        return a, b

    def local_time(self, s: float) -> tuple[int, float]:
        """(slot index, ramp time in [0, 1]) with epsilon plateaus at the ends."""
        i = self.slot(s)
        a, b = self.bounds(i)
        eps = self.epsilon
        lo = (1 - eps) * a + eps * b
        hi = eps * a + (1 - eps) * b
        if s <= lo:
            return i, 0.0
        if s > hi:
            return i, 1.0
        # one-ulp cleanup so exact sample times land on exact ramp times
        t = round((s - lo) / ((1 - 2 * eps) * (b - a)), 12)
        return i, min(max(t, 0.0), 1.0)


# -- mutation paths ---------------------------------------------------------------


class MutationPath:
    """Evaluator over (s, tier): tier 0 before, tier 1 after the s-step."""

    def at(self, s: float, tier: int) -> ClusterRep:
        raise NotImplementedError

    def step(self, s: float):
        return ("trivial",)

    @property
    def source(self) -> ClusterRep:
        return self.at(0.0, 0)

    @property
    def target(self) -> ClusterRep:
        return self.at(1.0, 1)


@dataclass
class SequencePath(MutationPath):
    """A finite run of schedules laid out on the integer slots 0..k-1."""

    schedules: tuple
    warp: TimeWarp

    def at(self, s: float, tier: int) -> ClusterRep:
        if not 0.0 <= s <= 1.0:
            raise ValueError("path parameter must lie in [0, 1]")
        k = len(self.schedules)
        if s == 0.0:
            return self.schedules[0].source
        if s == 1.0:
            return self.schedules[-1].target
        i, t = self.warp.local_time(s)
        if i < 0:
            return self.schedules[0].source
        if i >= k:
            return self.schedules[-1].target
        return self.schedules[i].cluster_at(t, tier == 1)

    def step(self, s: float):
        if s in (0.0, 1.0):
            return ("trivial",)
        i, t = self.warp.local_time(s)
        if 0 <= i < len(self.schedules) and 0.0 < t < 1.0:
            return self.schedules[i].step_at(t)
        return ("trivial",)


@dataclass
class ConstantPath(MutationPath):
    rep: ClusterRep

    def at(self, s: float, tier: int) -> ClusterRep:
        return self.rep


@dataclass
class ComposedPath(MutationPath):
    first: MutationPath
    second: MutationPath

    def at(self, s: float, tier: int) -> ClusterRep:
        if s <= 0.5:
            return self.first.at(min(2 * s, 1.0), tier)
        return self.second.at(2 * s - 1, tier)

    def step(self, s: float):
        if s <= 0.5:
            return self.first.step(min(2 * s, 1.0))
        return self.second.step(2 * s - 1)


@dataclass
class InvertedPath(MutationPath):
    base: MutationPath

    def at(self, s: float, tier: int) -> ClusterRep:
        return self.base.at(1.0 - s, 1 - tier)

    def step(self, s: float):
        step = self.base.step(1.0 - s)
        if step[0] == "mutation":
            return ("mutation", step[2], step[1])
        return step


def _quick_probes(rep: ClusterRep) -> list[IntervalIndec]:
    import random as _random

    rng = _random.Random(11)
    return rep.sample_members(rng, 24)


def path_from_long_sequence(schedules: Sequence[ContinuousSchedule], warp: TimeWarp) -> SequencePath:
    """Lay consecutive schedules on the integer slots of the warp."""
    schedules = tuple(schedules)
    if not schedules:
        raise ValueError("need at least one schedule")
    for a, b in zip(schedules, schedules[1:]):
        probes = _quick_probes(a.target) + _quick_probes(b.source)
        for p in probes:
            if a.target.member(p) != b.source.member(p):
                raise ChainMismatchError(f"consecutive schedules disagree at {p}")
    return SequencePath(schedules, warp)


def compose_paths(p1: MutationPath, p2: MutationPath, probes: Optional[Sequence[IntervalIndec]] = None) -> ComposedPath:
    if probes is not None:
        end, start = p1.at(1.0, 0), p2.at(0.0, 0)
        for p in probes:
            if end.member(p) != start.member(p):
                raise EndpointMismatchError(f"paths do not chain at {p}")
    return ComposedPath(p1, p2)


def invert_path(p: MutationPath) -> InvertedPath:
    return InvertedPath(p)


def proj_to_inj_path(epsilon: float = 0.1) -> SequencePath:
    mu1, mu2 = projectives_to_injectives_schedules()
    return path_from_long_sequence([mu1, mu2], TimeWarp(epsilon))


# -- reachability on finite exchange graphs -----------------------------------------


def reachability_demo(n: int) -> dict:
    """BFS facts about the polygon exchange graph: connectivity, regularity,
    diameter, and node count."""
    graph = gons.exchange_graph(n)
    connected = graph.is_connected()
    degrees = {graph.degree(v) for v in graph.nodes}
    return {
        "n": n,
        "nodes": len(graph.nodes),
        "connected": connected,
        "regular": degrees == {n},
        "diameter": graph.diameter() if connected else None,
    }
