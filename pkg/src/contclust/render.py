"""SVG renderers for arc diagrams, polygons, and animation frames.

Output is deterministic: members are sorted, ids are assigned in sorted
order, and coordinates are formatted with fixed precision.
"""

from __future__ import annotations

import math
from typing import Iterable, Optional, Sequence

from . import gons
from .arcs import arc_of_interval, orient
from .clusters import ClusterRep
from .intervals import IntervalIndec
from .numbers import Ext
from .quiver import QuiverTypeA

WIDTH = 720.0
HEIGHT = 360.0
MARGIN = 24.0


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _svg(elements: Sequence[str], width: float = WIDTH, height: float = HEIGHT) -> str:
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{int(width)}" '
        f'height="{int(height)}" viewBox="0 0 {int(width)} {int(height)}">'
    )
    return "\n".join([head, *elements, "</svg>"]) + "\n"


def _compress(x: Ext) -> float:
    """Map the extended line onto (0, 1) via arctan."""
    if not x.finite:
        return 0.0 if x < Ext(0) else 1.0
    return math.atan(float(x.value) / 3.0) / math.pi + 0.5


def _baseline_x(x: Ext) -> float:
    return MARGIN + _compress(x) * (WIDTH - 2 * MARGIN)


def arc_id(m: IntervalIndec) -> str:
    return str(m)


def member_coords(q: QuiverTypeA, m: IntervalIndec) -> dict:
    """Screen coordinates of a member's arc for hit regions."""
    if q.is_straight:
        base = HEIGHT - 40.0
        return {
            "x1": round(_baseline_x(m.lower), 2),
            "x2": round(_baseline_x(m.upper), 2),
            "y": round(base, 2),
        }
    a = arc_of_interval(q, m)
    src, tgt = orient(q, a)
    x1, y1 = _endpoint_xy(q, src)
    x2, y2 = _endpoint_xy(q, tgt)
    return {"x1": round(x1, 2), "y1": round(y1, 2), "x2": round(x2, 2), "y2": round(y2, 2)}


def diagonal_coords(t, d) -> dict:
    """Screen coordinates of a polygon or gon diagonal."""
    if t.arena == gons.FINITE:
        total = t.n + 3
        cx, cy, radius = WIDTH / 2, HEIGHT / 2, min(WIDTH, HEIGHT) / 2 - MARGIN
        def pos(v):
            ang = -math.pi / 2 + 2 * math.pi * (int(v) - 1) / total
            return (cx + radius * math.cos(ang), cy + radius * math.sin(ang))
        (x1, y1), (x2, y2) = pos(d.i), pos(d.j)
        return {"x1": round(x1, 2), "y1": round(y1, 2), "x2": round(x2, 2), "y2": round(y2, 2)}
    base = HEIGHT - 40.0
    def vx(v):
        if v == gons.NEG_V:
            return MARGIN
        if v == gons.POS_V:
            return WIDTH - MARGIN
        return MARGIN + (math.atan(float(v) / 4.0) / math.pi + 0.5) * (WIDTH - 2 * MARGIN)
    return {"x1": round(vx(d.i), 2), "x2": round(vx(d.j), 2), "y": round(base, 2)}


def _arc_path(x1: float, x2: float, base: float) -> str:
    if x2 < x1:
        x1, x2 = x2, x1
    r = max((x2 - x1) / 2.0, 3.0)
    return f"M {_fmt(x1)} {_fmt(base)} A {_fmt(r)} {_fmt(min(r, base - 8))} 0 0 1 {_fmt(x2)} {_fmt(base)}"


def _straight_arc_elements(
    members: Sequence[IntervalIndec],
    mutable: set[str],
    swap: Optional[tuple[IntervalIndec, IntervalIndec]],
) -> list[str]:
    base = HEIGHT - 40.0
    out = [
        f'<line x1="{_fmt(MARGIN)}" y1="{_fmt(base)}" x2="{_fmt(WIDTH - MARGIN)}" '
        f'y2="{_fmt(base)}" stroke="#444" stroke-width="1"/>',
        f'<text x="{_fmt(MARGIN)}" y="{_fmt(base + 16)}" font-size="11">-inf</text>',
        f'<text x="{_fmt(WIDTH - MARGIN - 24)}" y="{_fmt(base + 16)}" font-size="11">+inf</text>',
    ]
    swap_old = swap[0] if swap else None
    swap_new = swap[1] if swap else None
    for k, m in enumerate(members):
        x1, x2 = _baseline_x(m.lower), _baseline_x(m.upper)
        ident = arc_id(m)
        classes = ["arc"]
        if ident in mutable:
            classes.append("mutable")
        style = 'stroke="#1f6feb"' if ident in mutable else 'stroke="#555"'
        dash = ""
        if swap_new is not None and m == swap_new:
            dash = ' stroke-dasharray="6 4"'
            style = 'stroke="#d33"'
        if swap_old is not None and m == swap_old:
            style = 'stroke="#d33" stroke-width="2.4"'
        if m.is_singleton:
            cx = _baseline_x(m.lower)
            out.append(
                f'<circle id="m{k}" class="{" ".join(classes)}" data-member="{ident}" '
                f'cx="{_fmt(cx)}" cy="{_fmt(base)}" r="3.2" fill="#1a7f37"/>'
            )
        else:
            out.append(
                f'<path id="m{k}" class="{" ".join(classes)}" data-member="{ident}" '
                f'd="{_arc_path(x1, x2, base)}" fill="none" {style} stroke-width="1.6"{dash}/>'
            )
    return out


def _family_band_elements(rep: ClusterRep, depth: int = 4) -> list[str]:
    """Families render as shaded bands plus representative arcs."""
    base = HEIGHT - 40.0
    out = []
    reps: list[IntervalIndec] = []
    for fam in rep.families:
        truncated = getattr(fam, "truncated", None)
        if truncated is None:
            continue
        members = list(truncated(depth))
        if not members:
            continue
        los = [m.lower for m in members]
        his = [m.upper for m in members]
        x1 = _baseline_x(min(los))
        x2 = _baseline_x(max(his))
        out.append(
            f'<rect x="{_fmt(x1)}" y="{_fmt(base - 80)}" width="{_fmt(max(x2 - x1, 2.0))}" '
            f'height="80" fill="#1f6feb" opacity="0.06"/>'
        )
        reps.extend(members[: 2 ** depth])
    out.extend(_straight_arc_elements(sorted(set(reps), key=lambda m: m.sort_key()), set(), None))
    return out


def _marked_boundary(q: QuiverTypeA) -> dict:
    """Piecewise-linear boundary through the segment symbols: segment symbols
    sit on alternating upper/lower vertices, points on the edges between."""
    segs = list(q.segment_indices)
    pts = {}
    step = (WIDTH - 2 * MARGIN) / max(len(segs) - 1, 1)
    for k, n in enumerate(segs):
        y = HEIGHT / 2 + (-70 if n % 2 == 0 else 70)
        pts[n] = (MARGIN + k * step, y)
    return pts


def _endpoint_xy(q: QuiverTypeA, e) -> tuple[float, float]:
    verts = _marked_boundary(q)
    if e.kind == "segment":
        x, y = verts[e.seg]
        return (x + (3 if e.side > 0 else -3), y)
    _, n = q.segment_of(e.x)
    lo, hi = q.segment_span(n)
    x1, y1 = verts[n]
    # fraction along the edge toward the next segment vertex
    nxt = n + 1 if n + 1 in verts else n
    x2, y2 = verts.get(nxt, (x1 + 40, y1))
    if lo.finite and hi.finite:
        t = float((e.x - lo.value) / (hi.value - lo.value))
    else:
        t = 0.5 + math.atan(float(e.x)) / math.pi * 0.5
    t = min(max(t, 0.06), 0.94)
    return (x1 + (x2 - x1) * t, y1 + (y2 - y1) * t)


def _marked_arc_elements(q: QuiverTypeA, members: Sequence[IntervalIndec], mutable: set[str]) -> list[str]:
    verts = _marked_boundary(q)
    out = []
    coords = sorted(verts.items())
    path = " ".join(
        ("M" if k == 0 else "L") + f" {_fmt(x)} {_fmt(y)}" for k, (_, (x, y)) in enumerate(coords)
    )
    out.append(f'<path d="{path}" fill="none" stroke="#444" stroke-width="1"/>')
    for n, (x, y) in coords:
        out.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="2.5" fill="#444"/>')
        out.append(f'<text x="{_fmt(x - 12)}" y="{_fmt(y - 8)}" font-size="10">s{n}|s{n + 1}</text>')
    for k, m in enumerate(members):
        a = arc_of_interval(q, m)
        src, tgt = orient(q, a)
        x1, y1 = _endpoint_xy(q, src)
        x2, y2 = _endpoint_xy(q, tgt)
        ident = arc_id(m)
        color = "#1f6feb" if ident in mutable else "#555"
        out.append(
            f'<line id="m{k}" class="arc" data-member="{ident}" x1="{_fmt(x1)}" y1="{_fmt(y1)}" '
            f'x2="{_fmt(x2)}" y2="{_fmt(y2)}" stroke="{color}" stroke-width="1.5"/>'
        )
    return out


def render_cluster(
    rep: ClusterRep,
    mutable: Optional[Iterable[str]] = None,
    swap: Optional[tuple[IntervalIndec, IntervalIndec]] = None,
    family_depth: int = 4,
) -> str:
    mutable = set(mutable or ())
    members = sorted(rep.explicit, key=lambda m: m.sort_key())
    if rep.quiver.is_straight:
        elements = _family_band_elements(rep, family_depth)
        elements += _straight_arc_elements(members, mutable, swap)
    else:
        elements = _marked_arc_elements(rep.quiver, members, mutable)
    return _svg(elements)


def render_polygon(t: gons.GonTriangulation, mutable: Optional[Iterable[str]] = None) -> str:
    if t.arena != gons.FINITE:
        return render_gon(t)
    mutable = set(mutable or ())
    total = t.n + 3
    cx, cy, radius = WIDTH / 2, HEIGHT / 2, min(WIDTH, HEIGHT) / 2 - MARGIN
    pos = {}
    for v in range(1, total + 1):
        ang = -math.pi / 2 + 2 * math.pi * (v - 1) / total
        pos[v] = (cx + radius * math.cos(ang), cy + radius * math.sin(ang))
    out = []
    ring = " ".join(
        ("M" if v == 1 else "L") + f" {_fmt(pos[v][0])} {_fmt(pos[v][1])}" for v in range(1, total + 1)
    ) + " Z"
    out.append(f'<path d="{ring}" fill="none" stroke="#444" stroke-width="1.2"/>')
    for v in range(1, total + 1):
        x, y = pos[v]
        out.append(f'<text x="{_fmt(x - 4)}" y="{_fmt(y - 6)}" font-size="11">{v}</text>')
    for k, d in enumerate(sorted(t.explicit)):
        (x1, y1), (x2, y2) = pos[int(d.i)], pos[int(d.j)]
        ident = str(d)
        color = "#1f6feb" if ident in mutable else "#555"
        out.append(
            f'<line id="d{k}" class="diag" data-member="{ident}" x1="{_fmt(x1)}" y1="{_fmt(y1)}" '
            f'x2="{_fmt(x2)}" y2="{_fmt(y2)}" stroke="{color}" stroke-width="1.6"/>'
        )
    return _svg(out)


def render_gon(t: gons.GonTriangulation, window: int = 8, mutable: Optional[Iterable[str]] = None) -> str:
    """Infinity-gon view: integer vertices compressed onto a baseline."""
    mutable = set(mutable or ())
    base = HEIGHT - 40.0

    def vx(v) -> float:
        if v == gons.NEG_V:
            return MARGIN
        if v == gons.POS_V:
            return WIDTH - MARGIN
        return MARGIN + (math.atan(float(v) / 4.0) / math.pi + 0.5) * (WIDTH - 2 * MARGIN)

    out = [
        f'<line x1="{_fmt(MARGIN)}" y1="{_fmt(base)}" x2="{_fmt(WIDTH - MARGIN)}" y2="{_fmt(base)}" stroke="#444"/>'
    ]
    for v in range(-window, window + 1):
        out.append(f'<circle cx="{_fmt(vx(v))}" cy="{_fmt(base)}" r="2" fill="#444"/>')
    members = sorted(set(t.members_in_window(window)))
    for k, d in enumerate(members):
        x1, x2 = vx(d.i), vx(d.j)
        ident = str(d)
        color = "#1f6feb" if ident in mutable else "#555"
        out.append(
            f'<path id="d{k}" class="diag" data-member="{ident}" d="{_arc_path(x1, x2, base)}" '
            f'fill="none" stroke="{color}" stroke-width="1.4"/>'
        )
    return _svg(out)


def render_animation(path, frames: int = 6, family_depth: int = 4) -> list[str]:
    """Frames at evenly spaced times, endpoints included."""
    if frames < 2:
        raise ValueError("need at least two frames")
    out = []
    for k in range(frames):
        t = k / (frames - 1)
        rep = path.at(t, 1)
        out.append(render_cluster(rep, family_depth=family_depth))
    return out
