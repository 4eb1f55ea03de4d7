"""Coordinate changes between the strip picture and interval coordinates.

The strip domain is {(x, y) : |x-y| < pi, x >= 0, y < pi}; its image under
the tangent change of coordinates is {(a, b) : -inf <= a < b < +inf}, with
the x = 0 boundary mapping to a = -inf.  This is the one floating-point
corner of the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

PI = math.pi


class DomainError(ValueError):
    pass


@dataclass(frozen=True)
class StripPoint:
    x: float
    y: float


@dataclass(frozen=True)
class CCPoint:
    a: float  # may be -inf
    b: float


def in_strip(p: StripPoint) -> bool:
    return abs(p.x - p.y) < PI and p.x >= 0 and p.y < PI


def in_cc(c: CCPoint) -> bool:
    return c.a < c.b < math.inf and (c.a == -math.inf or math.isfinite(c.a))


def g_map(p: StripPoint) -> tuple[float, float]:
    """(x, y) -> ((y+x)/2, (y-x)/2), the rotated coordinates."""
    if not in_strip(p):
        raise DomainError(f"({p.x}, {p.y}) outside the strip domain")
    return ((p.y + p.x) / 2.0, (p.y - p.x) / 2.0)


def h_map(alpha: float, beta: float) -> CCPoint:
    """(alpha, beta) -> (tan((alpha-beta-pi)/2), tan((alpha+beta)/2))."""
    # tolerance absorbs rounding when (alpha, beta) comes from g_map
    tol = 1e-12
    if not (-PI / 2 < beta < PI / 2 and beta <= alpha + tol and alpha < PI - beta + tol):
        raise DomainError(f"({alpha}, {beta}) outside the wedge domain")
    arg = (alpha - beta - PI) / 2.0
    a = -math.inf if arg <= -PI / 2 else math.tan(arg)
    return CCPoint(a, math.tan((alpha + beta) / 2.0))


def f_map(p: StripPoint) -> CCPoint:
    """h after g; collapses to (tan((x-pi)/2), tan(y/2))."""
    if not in_strip(p):
        raise DomainError(f"({p.x}, {p.y}) outside the strip domain")
    a = -math.inf if p.x == 0 else math.tan((p.x - PI) / 2.0)
    b = math.tan(p.y / 2.0)
    return CCPoint(a, b)


def f_inverse(c: CCPoint) -> StripPoint:
    if not in_cc(c):
        raise DomainError(f"({c.a}, {c.b}) outside the interval domain")
    x = 0.0 if c.a == -math.inf else PI + 2.0 * math.atan(c.a)
    y = 2.0 * math.atan(c.b)
    return StripPoint(x, y)
