"""Polygons, the infinity-gon, and its completion.

Triangulations are stored as a finite explicit diagonal set plus tail
descriptors (fans toward a fountain vertex, or the centered zigzag).  Every
pairwise noncrossing question against a tail is decided in closed form and
regression-tested against window truncation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Union

NEG_V = float("-inf")
POS_V = float("inf")

Vertex = Union[int, float]

LEFT = "left"
RIGHT = "right"


class LimitExceededError(ValueError):
    pass


class FrozenDiagonalError(RuntimeError):
    pass


class AmbiguousFlipError(RuntimeError):
    pass


def _is_finite(v: Vertex) -> bool:
    return not isinstance(v, float) or math.isfinite(v)


def _vertex_str(v: Vertex) -> str:
    if v == NEG_V:
        return "-inf"
    if v == POS_V:
        return "+inf"
    return str(int(v))


def _vertex_from(v) -> Vertex:
    if v in ("-inf", NEG_V):
        return NEG_V
    if v in ("+inf", POS_V):
        return POS_V
    return int(v)


@dataclass(frozen=True, order=True)
class Diagonal:
    i: Vertex
    j: Vertex

    def __post_init__(self):
        if not self.i < self.j:
            raise ValueError("diagonal endpoints must satisfy i < j")
        if self.i == NEG_V and self.j == POS_V:
            raise ValueError("the generic diagonal is a side, not a member diagonal")
        if _is_finite(self.i) and _is_finite(self.j) and self.j - self.i < 2:
            raise ValueError("diagonal needs j - i >= 2")

    @property
    def is_adic(self) -> bool:
        return self.i == NEG_V

    @property
    def is_prufer(self) -> bool:
        return self.j == POS_V

    def finite_vertices(self) -> list[int]:
        return [int(v) for v in (self.i, self.j) if _is_finite(v)]

    def __str__(self) -> str:
        return f"{_vertex_str(self.i)}~{_vertex_str(self.j)}"


def diag(i, j) -> Diagonal:
    return Diagonal(_vertex_from(i), _vertex_from(j))


def adic(j: int) -> Diagonal:
    return Diagonal(NEG_V, j)


def prufer(i: int) -> Diagonal:
    return Diagonal(i, POS_V)


def diag_crossing(d1: Diagonal, d2: Diagonal) -> bool:
    """Strict interleaving of endpoints."""
    return (d1.i < d2.i < d1.j < d2.j) or (d2.i < d1.i < d2.j < d1.j)


# -- tails -------------------------------------------------------------------


@dataclass(frozen=True)
class Fan:
    """All diagonals at `vertex` extending from `start` away to infinity.

    LEFT: {k ~ vertex : k <= start};  RIGHT: {vertex ~ k : k >= start}.
    """

    vertex: int
    direction: str
    start: int

    def __post_init__(self):
        if self.direction not in (LEFT, RIGHT):
            raise ValueError("direction must be left or right")
        if self.direction == LEFT and self.start > self.vertex - 2:
            raise ValueError("left fan start must be <= vertex - 2")
        if self.direction == RIGHT and self.start < self.vertex + 2:
            raise ValueError("right fan start must be >= vertex + 2")

    def contains(self, d: Diagonal) -> bool:
        if self.direction == LEFT:
            return d.j == self.vertex and _is_finite(d.i) and d.i <= self.start
        return d.i == self.vertex and _is_finite(d.j) and d.j >= self.start

    def crosses(self, d: Diagonal) -> bool:
        i, j, v, k0 = d.i, d.j, self.vertex, self.start
        if self.direction == LEFT:
            # some member k~v with k < i < v < j, or i < k < j < v
            if _is_finite(i) and i < v < j:
                return True
            return j < v and k0 > i
        # some member v~k with v < i < k < j, or i < v < j < k
        if v < i and k0 < j:
            return True
        return i < v < j and _is_finite(j)

    def window_members(self, radius: int) -> Iterator[Diagonal]:
        if self.direction == LEFT:
            for k in range(-radius, self.start + 1):
                yield Diagonal(k, self.vertex)
        else:
            for k in range(self.start, radius + 1):
                yield Diagonal(self.vertex, k)

    def vertex_hints(self) -> set[int]:
        return {self.vertex, self.start}

    def to_json_dict(self) -> dict:
        return {"kind": "fan", "vertex": self.vertex, "direction": self.direction, "start": self.start}


@dataclass(frozen=True)
class Zigzag:
    """The centered zigzag {-i ~ i, -i+1 ~ i : i >= start}."""

    start: int

    def __post_init__(self):
        if self.start < 2:
            raise ValueError("zigzag start must be >= 2")

    def contains(self, d: Diagonal) -> bool:
        if not (_is_finite(d.i) and _is_finite(d.j)):
            return False
        i = d.j
        return i >= self.start and (d.i == -i or d.i == -i + 1)

    def crosses(self, d: Diagonal) -> bool:
        finite = [abs(v) for v in (d.i, d.j) if _is_finite(v)]
        hi = max([self.start] + finite) + 2
        for i in range(self.start, hi + 1):
            if diag_crossing(d, Diagonal(-i, i)):
                return True
            if diag_crossing(d, Diagonal(-i + 1, i)):
                return True
        return False

    def window_members(self, radius: int) -> Iterator[Diagonal]:
        for i in range(self.start, radius + 1):
            yield Diagonal(-i, i)
            yield Diagonal(-i + 1, i)

    def vertex_hints(self) -> set[int]:
        return {-self.start, -self.start + 1, self.start}

    def to_json_dict(self) -> dict:
        return {"kind": "zigzag", "start": self.start}


Tail = Union[Fan, Zigzag]


def tail_from_json_dict(d: dict) -> Tail:
    if d["kind"] == "fan":
        return Fan(int(d["vertex"]), d["direction"], int(d["start"]))
    if d["kind"] == "zigzag":
        return Zigzag(int(d["start"]))
    raise ValueError(f"unknown tail kind {d['kind']!r}")


def tails_cross(t1: Tail, t2: Tail) -> bool:
    """Closed-form crossing decision between two tails."""
    if isinstance(t1, Zigzag) and isinstance(t2, Zigzag):
        return False  # subsets of one global zigzag family
    if isinstance(t1, Zigzag) or isinstance(t2, Zigzag):
        return True  # a fan always meets a zigzag far enough out
    if t1.direction == t2.direction:
        return t1.vertex != t2.vertex
    left, right = (t1, t2) if t1.direction == LEFT else (t2, t1)
    return right.vertex < left.vertex


# -- triangulations ----------------------------------------------------------

FINITE = "finite"
INFINITE = "infinite"
COMPLETED = "completed"


@dataclass(frozen=True)
class GonTriangulation:
    arena: str
    n: Optional[int] = None  # FINITE only: triangulations of the (n+3)-gon
    explicit: frozenset = frozenset()
    tails: tuple = ()

    def __post_init__(self):
        if self.arena == FINITE:
            if self.n is None or self.n < 1:
                raise ValueError("finite arena needs n >= 1")
            if self.tails:
                raise ValueError("finite arenas carry no tails")
            for d in self.explicit:
                self._check_finite_diag(d)
        elif self.arena == INFINITE:
            for d in self.explicit:
                if not (_is_finite(d.i) and _is_finite(d.j)):
                    raise ValueError("infinite arena admits only finite diagonals")
        elif self.arena != COMPLETED:
            raise ValueError(f"unknown arena {self.arena!r}")

    def _check_finite_diag(self, d: Diagonal) -> None:
        top = self.n + 3
        if not (_is_finite(d.i) and _is_finite(d.j)):
            raise ValueError("finite arena admits only finite diagonals")
        if not (1 <= d.i < d.j <= top and d.j - d.i <= self.n + 1):
            raise ValueError(f"{d} is not a diagonal of the {top}-gon")

    # -- membership and crossing ------------------------------------------

    def contains(self, d: Diagonal) -> bool:
        return d in self.explicit or any(t.contains(d) for t in self.tails)

    def crosses_member(self, d: Diagonal) -> bool:
        if any(e != d and diag_crossing(e, d) for e in self.explicit):
            return True
        return any(t.crosses(d) for t in self.tails)

    def validate(self) -> None:
        ex = sorted(self.explicit)
        for a in range(len(ex)):
            for b in range(a + 1, len(ex)):
                if diag_crossing(ex[a], ex[b]):
                    raise ValueError(f"members cross: {ex[a]} and {ex[b]}")
        for d in ex:
            for t in self.tails:
                if t.crosses(d):
                    raise ValueError(f"{d} crosses tail {t}")
        for a in range(len(self.tails)):
            for b in range(a + 1, len(self.tails)):
                if tails_cross(self.tails[a], self.tails[b]):
                    raise ValueError("tails cross")
        if self.arena != COMPLETED:
            for d in ex:
                if d.is_adic or d.is_prufer:
                    raise ValueError("infinite-ended diagonals need the completed arena")

    def is_maximal_finite(self) -> bool:
        return self.arena == FINITE and len(self.explicit) == self.n

    def vertex_hints(self) -> set[int]:
        hints: set[int] = set()
        for d in self.explicit:
            hints.update(d.finite_vertices())
        for t in self.tails:
            hints.update(t.vertex_hints())
        return hints

    def members_in_window(self, radius: int) -> Iterator[Diagonal]:
        for d in self.explicit:
            yield d
        for t in self.tails:
            yield from t.window_members(radius)

    # -- serialization -------------------------------------------------------

    def to_json_dict(self) -> dict:
        out = {
            "arena": self.arena,
            "diagonals": sorted([[_vertex_str(d.i), _vertex_str(d.j)] for d in self.explicit]),
        }
        if self.arena == FINITE:
            out["n"] = self.n
        if self.tails:
            out["tails"] = [t.to_json_dict() for t in self.tails]
        return out

    @staticmethod
    def from_json_dict(d: dict) -> "GonTriangulation":
        diags = frozenset(diag(i, j) for i, j in d.get("diagonals", []))
        tails = tuple(tail_from_json_dict(t) for t in d.get("tails", []))
        return GonTriangulation(d["arena"], d.get("n"), diags, tails)


def finite_triangulation(n: int, diagonals: Iterable) -> GonTriangulation:
    return GonTriangulation(FINITE, n, frozenset(diag(i, j) for i, j in diagonals))


def infinite_triangulation(diagonals: Iterable[Diagonal], tails: Iterable[Tail] = ()) -> GonTriangulation:
    return GonTriangulation(INFINITE, None, frozenset(diagonals), tuple(tails))


def completed_triangulation(diagonals: Iterable[Diagonal], tails: Iterable[Tail] = ()) -> GonTriangulation:
    return GonTriangulation(COMPLETED, None, frozenset(diagonals), tuple(tails))


# -- enumeration and the exchange graph --------------------------------------


def polygon_diagonals(n: int) -> list[Diagonal]:
    top = n + 3
    out = []
    for i in range(1, top + 1):
        for j in range(i + 2, top + 1):
            if i == 1 and j == top:
                continue
            out.append(Diagonal(i, j))
    return out


def enumerate_triangulations(n: int) -> list[GonTriangulation]:
    """All maximal noncrossing diagonal sets of the (n+3)-gon."""
    if n > 9:
        raise LimitExceededError("polygon enumeration is limited to n <= 9")
    if n < 1:
        raise ValueError("need n >= 1")
    diags = polygon_diagonals(n)
    found: list[frozenset] = []

    def backtrack(start: int, chosen: list[Diagonal]):
        if len(chosen) == n:
            found.append(frozenset(chosen))
            return
        for idx in range(start, len(diags)):
            d = diags[idx]
            if all(not diag_crossing(d, c) for c in chosen):
                chosen.append(d)
                backtrack(idx + 1, chosen)
                chosen.pop()

    backtrack(0, [])
    return [GonTriangulation(FINITE, n, f) for f in found]


@dataclass
class ExchangeGraph:
    n: int
    nodes: list[frozenset]
    adjacency: dict

    def degree(self, node) -> int:
        return len(self.adjacency[node])

    def is_connected(self) -> bool:
        if not self.nodes:
            return True
        seen = {self.nodes[0]}
        stack = [self.nodes[0]]
        while stack:
            for nb in self.adjacency[stack.pop()]:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        return len(seen) == len(self.nodes)

    def bfs_distances(self, start) -> dict:
        dist = {start: 0}
        frontier = [start]
        while frontier:
            nxt = []
            for u in frontier:
                for v in self.adjacency[u]:
                    if v not in dist:
                        dist[v] = dist[u] + 1
                        nxt.append(v)
            frontier = nxt
        return dist

    def diameter(self) -> int:
        return max(max(self.bfs_distances(u).values()) for u in self.nodes)

    def node_label(self, node) -> str:
        return "|".join(str(d) for d in sorted(node))

    def to_dot(self) -> str:
        lines = ["graph exchange {"]
        index = {node: k for k, node in enumerate(self.nodes)}
        for node in self.nodes:
            lines.append(f'  t{index[node]} [label="{self.node_label(node)}"];')
        for node in self.nodes:
            for nb in self.adjacency[node]:
                if index[node] < index[nb]:
                    lines.append(f"  t{index[node]} -- t{index[nb]};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def exchange_graph(n: int) -> ExchangeGraph:
    """Nodes are triangulations of the (n+3)-gon, edges single flips."""
    tris = enumerate_triangulations(n)
    nodes = sorted((t.explicit for t in tris), key=lambda f: sorted(f))
    adjacency = {node: [] for node in nodes}
    for node in nodes:
        t = GonTriangulation(FINITE, n, node)
        for d in sorted(node):
            t2, _ = flip(t, d)
            adjacency[node].append(t2.explicit)
    return ExchangeGraph(n, nodes, adjacency)


# -- flips -------------------------------------------------------------------


def _materialize(t: GonTriangulation, d: Diagonal) -> GonTriangulation:
    """Rewrite t so that the member d sits in the explicit part."""
    if d in t.explicit:
        return t
    for k, tail in enumerate(t.tails):
        if not tail.contains(d):
            continue
        rest = t.tails[:k] + t.tails[k + 1:]
        extra: list[Diagonal] = []
        new_tails: list[Tail] = list(rest)
        if isinstance(tail, Fan):
            if tail.direction == LEFT:
                extra = [Diagonal(x, tail.vertex) for x in range(int(d.i) + 1, tail.start + 1)]
                if int(d.i) - 1 <= tail.vertex - 2:
                    new_tails.append(Fan(tail.vertex, LEFT, int(d.i) - 1))
            else:
                extra = [Diagonal(tail.vertex, x) for x in range(tail.start, int(d.j))]
                new_tails.append(Fan(tail.vertex, RIGHT, int(d.j) + 1))
        else:
            i = int(d.j)
            for p in range(tail.start, i):
                extra.append(Diagonal(-p, p))
                extra.append(Diagonal(-p + 1, p))
            other = Diagonal(-i + 1, i) if d.i == -i else Diagonal(-i, i)
            extra.append(other)
            new_tails.append(Zigzag(i + 1))
        return GonTriangulation(
            t.arena, t.n, t.explicit | {d} | frozenset(extra), tuple(new_tails)
        )
    raise KeyError(f"{d} is not a member")


def _candidate_diagonals(t: GonTriangulation, d: Diagonal) -> Iterator[Diagonal]:
    if t.arena == FINITE:
        yield from polygon_diagonals(t.n)
        return
    verts = t.vertex_hints() | set(d.finite_vertices())
    window = sorted({v + off for v in verts for off in range(-2, 3)})
    ends: list[Vertex] = list(window)
    if t.arena == COMPLETED:
        ends = [NEG_V] + ends + [POS_V]
    for a_idx in range(len(ends)):
        for b_idx in range(a_idx + 1, len(ends)):
            u, w = ends[a_idx], ends[b_idx]
            if u == NEG_V and w == POS_V:
                continue
            if _is_finite(u) and _is_finite(w) and w - u < 2:
                continue
            yield Diagonal(u, w)


def flip(t: GonTriangulation, d: Diagonal) -> tuple[GonTriangulation, Diagonal]:
    """Exchange d for the unique other diagonal keeping the set noncrossing.

    Raises FrozenDiagonalError when no replacement exists and
    AmbiguousFlipError when the candidate search finds more than one (which
    would signal a rule bug, not a legitimate outcome).
    """
    if not t.contains(d):
        raise KeyError(f"{d} is not a member")
    base = _materialize(t, d)
    rest = GonTriangulation(base.arena, base.n, base.explicit - {d}, base.tails)
    replacements = []
    for cand in _candidate_diagonals(base, d):
        if cand == d or not diag_crossing(cand, d):
            continue
        if rest.contains(cand):
            continue
        if not rest.crosses_member(cand):
            replacements.append(cand)
    if not replacements:
        raise FrozenDiagonalError(f"{d} has no replacement")
    if len(set(replacements)) > 1:
        raise AmbiguousFlipError(f"{d} has several replacements: {replacements}")
    new = replacements[0]
    return (
        GonTriangulation(base.arena, base.n, rest.explicit | {new}, rest.tails),
        new,
    )


# -- fountains ----------------------------------------------------------------

LOCALLY_FINITE = "locally_finite"


@dataclass(frozen=True)
class FountainReport:
    kind: str  # LOCALLY_FINITE or "left_right"
    left: Optional[int] = None
    right: Optional[int] = None


def classify_fountains(t: GonTriangulation) -> FountainReport:
    """Fountain vertices are read off the fan tails; zigzag-only is finite."""
    lefts = sorted({tail.vertex for tail in t.tails if isinstance(tail, Fan) and tail.direction == LEFT})
    rights = sorted({tail.vertex for tail in t.tails if isinstance(tail, Fan) and tail.direction == RIGHT})
    if not lefts and not rights:
        return FountainReport(LOCALLY_FINITE)
    if len(lefts) != 1 or len(rights) != 1:
        raise ValueError("a triangulation has at most one fountain per side")
    return FountainReport("left_right", lefts[0], rights[0])


# -- adic / prufer completions -------------------------------------------------


def _completion_candidates(t: GonTriangulation) -> list[int]:
    hints = t.vertex_hints()
    if not hints:
        return []
    lo, hi = min(hints) - 2, max(hints) + 2
    return list(range(lo, hi + 1))


def adic_completion(t: GonTriangulation) -> GonTriangulation:
    """Add every adic diagonal compatible with t (completed-arena view)."""
    added = []
    for j in _completion_candidates(t):
        cand = adic(j)
        if not t.contains(cand) and not t.crosses_member(cand):
            added.append(cand)
    return GonTriangulation(COMPLETED, None, t.explicit | frozenset(added), t.tails)


def prufer_completion(t: GonTriangulation) -> GonTriangulation:
    """Add every prufer diagonal compatible with t (completed-arena view)."""
    added = []
    for i in _completion_candidates(t):
        cand = prufer(i)
        if not t.contains(cand) and not t.crosses_member(cand):
            added.append(cand)
    return GonTriangulation(COMPLETED, None, t.explicit | frozenset(added), t.tails)
