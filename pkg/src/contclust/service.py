"""JSON-over-HTTP session service backing the mutation explorer.

Sessions hold either a polygon/gon triangulation or a cluster representation,
plus an optional time path.  Mutations are serialized per session (one writer
at a time); every state change pushes the previous serialized state onto the
undo stack, so undo restores byte-identical JSON.
"""

from __future__ import annotations

import json
import secrets
import threading
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from typing import Optional

from . import clusters as cl
from . import embeddings as em
from . import gons
from . import mutation as mu
from . import render
from .quiver import QuiverTypeA, STRAIGHT_DESCENDING


class ServiceError(Exception):
    def __init__(self, status: int, message: str):
        super().__init__(message)
        self.status = status
        self.message = message


@dataclass
class Session:
    sid: str
    kind: str  # "gon" | "cluster" | "path"
    quiver: QuiverTypeA
    state: object = None
    path: Optional[mu.MutationPath] = None
    t: float = 0.0
    history: list = field(default_factory=list)
    moves: list = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)

    # -- serialization ------------------------------------------------------

    def state_json(self) -> dict:
        if self.kind == "gon":
            return {"kind": "gon", "state": self.state.to_json_dict()}
        if self.kind == "cluster":
            return {"kind": "cluster", "state": self.state.to_json_dict()}
        return {"kind": "path", "t": self.t}

    def canonical(self) -> str:
        return json.dumps(self.state_json(), sort_keys=True)

    # -- views ---------------------------------------------------------------

    def arcs_view(self) -> dict:
        if self.kind == "gon":
            mutable = self.mutables()
            arcs = [
                {
                    "id": str(d),
                    "mutable": str(d) in mutable,
                    "coords": render.diagonal_coords(self.state, d),
                }
                for d in sorted(self.state.explicit)
            ]
            svg = (
                render.render_polygon(self.state, mutable)
                if self.state.arena == gons.FINITE
                else render.render_gon(self.state, mutable=mutable)
            )
            return {"arcs": arcs, "svg": svg, "state": self.state_json(), "history": list(self.moves)}
        if self.kind == "cluster":
            mutable = self.mutables()
            arcs = [
                {
                    "id": render.arc_id(m),
                    "mutable": render.arc_id(m) in mutable,
                    "coords": render.member_coords(self.state.quiver, m),
                }
                for m in sorted(self.state.explicit, key=lambda m: m.sort_key())
            ]
            svg = render.render_cluster(self.state, mutable)
            return {"arcs": arcs, "svg": svg, "state": self.state_json(), "history": list(self.moves)}
        rep = self.path.at(self.t, 1)
        arcs = [
            {
                "id": render.arc_id(m),
                "mutable": False,
                "coords": render.member_coords(rep.quiver, m),
            }
            for m in sorted(rep.explicit, key=lambda m: m.sort_key())
        ]
        return {"arcs": arcs, "svg": render.render_cluster(rep), "t": self.t}

    def mutables(self) -> set:
        out = set()
        if self.kind == "gon":
            for d in self.state.explicit:
                try:
                    gons.flip(self.state, d)
                    out.add(str(d))
                except (gons.FrozenDiagonalError, gons.AmbiguousFlipError):
                    pass
        elif self.kind == "cluster":
            for m in self.state.explicit:
                try:
                    cl.mutate(self.state, m)
                    out.add(render.arc_id(m))
                except (cl.FrozenMemberError, cl.AmbiguousMutationError, cl.UnsupportedQueryError):
                    pass
        return out

    # -- actions ---------------------------------------------------------------

    def mutate(self, arc_id: str) -> dict:
        with self.lock:
            before = self.canonical()
            if self.kind == "gon":
                match = [d for d in self.state.explicit if str(d) == arc_id]
                if not match:
                    raise ServiceError(400, f"unknown arc {arc_id!r}")
                try:
                    new_state, replacement = gons.flip(self.state, match[0])
                except gons.FrozenDiagonalError:
                    raise ServiceError(409, f"{arc_id} is frozen")
                self.history.append(before)
                self.moves.append({"replaced": arc_id, "by": str(replacement)})
                self.state = new_state
                return {"replaced": arc_id, "by": str(replacement), **self.arcs_view()}
            if self.kind == "cluster":
                match = [m for m in self.state.explicit if render.arc_id(m) == arc_id]
                if not match:
                    raise ServiceError(400, f"unknown arc {arc_id!r}")
                try:
                    new_state, replacement = cl.mutate(self.state, match[0])
                except cl.FrozenMemberError:
                    raise ServiceError(409, f"{arc_id} is frozen")
                self.history.append(before)
                self.moves.append({"replaced": arc_id, "by": render.arc_id(replacement)})
                self.state = new_state
                return {"replaced": arc_id, "by": render.arc_id(replacement), **self.arcs_view()}
            raise ServiceError(400, "path sessions mutate via /path/seek")

    def seek(self, t: float) -> dict:
        if self.kind != "path" or self.path is None:
            raise ServiceError(400, "not a path session")
        if not 0.0 <= t <= 1.0:
            raise ServiceError(400, "t must lie in [0, 1]")
        with self.lock:
            self.history.append(self.canonical())
            self.t = t
            return self.arcs_view()

    def graph(self) -> dict:
        """Exchange-graph mini-map data for finite polygon sessions."""
        if self.kind != "gon" or self.state.arena != gons.FINITE:
            raise ServiceError(400, "exchange graphs exist for polygon sessions only")
        graph = gons.exchange_graph(self.state.n)
        index = {node: k for k, node in enumerate(graph.nodes)}
        labels = [graph.node_label(node) for node in graph.nodes]
        edges = sorted(
            [index[a], index[b]]
            for a in graph.nodes
            for b in graph.adjacency[a]
            if index[a] < index[b]
        )
        return {
            "nodes": labels,
            "edges": edges,
            "current": graph.node_label(self.state.explicit),
            "count": len(labels),
        }

    def undo(self) -> dict:
        with self.lock:
            if not self.history:
                raise ServiceError(400, "nothing to undo")
            if self.moves:
                self.moves.pop()
            snapshot = json.loads(self.history.pop())
            if self.kind == "gon":
                self.state = gons.GonTriangulation.from_json_dict(snapshot["state"])
            elif self.kind == "cluster":
                self.state = _cluster_from_json(snapshot["state"], self.quiver)
            else:
                self.t = snapshot["t"]
            return self.arcs_view()


def _cluster_from_json(d: dict, quiver: QuiverTypeA) -> cl.ClusterRep:
    from .intervals import parse_interval

    explicit = frozenset(parse_interval(s) for s in d["explicit"])
    excluded = frozenset(parse_interval(s) for s in d.get("excluded", ()))
    families = tuple(_family_from_json(f) for f in d.get("families", ()))
    return cl.ClusterRep(quiver, explicit, families, excluded)


def _family_from_json(d: dict):
    from fractions import Fraction

    from .numbers import as_ext

    kind = d["kind"]
    if kind == "dyadic_tiling":
        return cl.DyadicTiling(Fraction(d["l"]), Fraction(d["r"]))
    if kind == "singleton_complement":
        return cl.SingletonComplement(Fraction(d["l"]), Fraction(d["r"]))
    if kind == "singleton_range":
        return cl.SingletonRange(as_ext(d["lo"]), as_ext(d["hi"]))
    if kind == "left_ray":
        return cl.LeftRay(bool(d["closed"]), as_ext(d["lo"]), as_ext(d["hi"]))
    if kind == "right_ray":
        return cl.RightRay(bool(d["closed"]), as_ext(d["lo"]), as_ext(d["hi"]))
    if kind == "all_integer_gap_tilings":
        return em.AllIntegerGapTilings()
    raise ServiceError(400, f"family kind {kind!r} is not restorable")


def _initial_state(spec: dict, quiver: QuiverTypeA):
    kind = spec.get("type", "polygon")
    if kind == "polygon":
        n = int(spec.get("n", 1))
        if "diagonals" in spec:
            t = gons.finite_triangulation(n, spec["diagonals"])
        else:
            t = gons.enumerate_triangulations(n)[0]
        t.validate()
        if len(t.explicit) != n:
            raise ServiceError(400, "polygon state must be a triangulation")
        return ("gon", t, None)
    if kind == "gon":
        t = gons.GonTriangulation.from_json_dict(spec["state"])
        t.validate()
        return ("gon", t, None)
    if kind == "cluster":
        preset = spec.get("preset", "grid")
        if preset == "projectives":
            return ("cluster", mu.projectives_cluster(), None)
        if preset == "injectives":
            return ("cluster", mu.injectives_cluster(), None)
        if preset == "middle":
            return ("cluster", mu.middle_cluster(), None)
        if preset == "grid":
            return ("cluster", _grid_demo_cluster(), None)
        raise ServiceError(400, f"unknown cluster preset {preset!r}")
    if kind == "path":
        if spec.get("preset", "proj_to_inj") != "proj_to_inj":
            raise ServiceError(400, "unknown path preset")
        path = mu.proj_to_inj_path(float(spec.get("epsilon", 0.1)))
        return ("path", None, path)
    raise ServiceError(400, f"unknown initial type {kind!r}")


def _grid_demo_cluster() -> cl.ClusterRep:
    from . import intervals as iv
    from .intervals import straight_compat_oracle

    pts = [1, 2, 3, 4]
    universe = [iv.whole_line()]
    for a in pts:
        universe.append(iv.singleton(a))
        universe += [iv.left_ray(a, True), iv.left_ray(a, False)]
        universe += [iv.right_ray(a, True), iv.right_ray(a, False)]
        for b in pts:
            if a < b:
                for li in (True, False):
                    for ui in (True, False):
                        universe.append(iv.interval(a, li, b, ui))
    members: list = []
    for m in universe:
        if all(straight_compat_oracle(m, x) for x in members):
            members.append(m)
    return cl.ClusterRep(STRAIGHT_DESCENDING, frozenset(members), ())


class SessionStore:
    def __init__(self):
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def create(self, payload: dict) -> Session:
        quiver_spec = payload.get("quiver", "straight")
        quiver = (
            STRAIGHT_DESCENDING
            if quiver_spec == "straight"
            else QuiverTypeA.from_json_dict(quiver_spec)
        )
        kind, state, path = _initial_state(payload.get("initial", {}), quiver)
        sid = secrets.token_hex(8)
        session = Session(sid, kind, quiver, state, path)
        with self._lock:
            self._sessions[sid] = session
        return session

    def get(self, sid: str) -> Session:
        with self._lock:
            session = self._sessions.get(sid)
        if session is None:
            raise ServiceError(404, f"unknown session {sid!r}")
        return session


def make_handler(store: SessionStore):
    class Handler(BaseHTTPRequestHandler):
        def log_message(self, *args):
            pass

        def _reply(self, status: int, payload: dict):
            body = json.dumps(payload, sort_keys=True).encode()
            self.send_response(status)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(body)))
            self.send_header("Access-Control-Allow-Origin", "*")
            self.end_headers()
            self.wfile.write(body)

        def _read_json(self) -> dict:
            length = int(self.headers.get("Content-Length", 0))
            if length == 0:
                return {}
            try:
                return json.loads(self.rfile.read(length))
            except json.JSONDecodeError:
                raise ServiceError(400, "malformed JSON body")

        def _route(self, method: str):
            parts = [p for p in self.path.split("?")[0].split("/") if p]
            try:
                if method == "POST" and parts == ["sessions"]:
                    session = store.create(self._read_json())
                    return self._reply(200, {"id": session.sid, **session.arcs_view()})
                if len(parts) >= 2 and parts[0] == "sessions":
                    session = store.get(parts[1])
                    rest = parts[2:]
                    if method == "GET" and rest == ["cluster"]:
                        return self._reply(200, session.arcs_view())
                    if method == "GET" and rest == ["mutables"]:
                        return self._reply(200, {"mutable": sorted(session.mutables())})
                    if method == "GET" and rest == ["graph"]:
                        return self._reply(200, session.graph())
                    if method == "POST" and rest == ["mutate"]:
                        body = self._read_json()
                        if "arcId" not in body:
                            raise ServiceError(400, "arcId required")
                        return self._reply(200, session.mutate(body["arcId"]))
                    if method == "POST" and rest == ["path", "seek"]:
                        body = self._read_json()
                        if "t" not in body:
                            raise ServiceError(400, "t required")
                        return self._reply(200, session.seek(float(body["t"])))
                    if method == "POST" and rest == ["undo"]:
                        return self._reply(200, session.undo())
                raise ServiceError(404, f"no route for {method} {self.path}")
            except ServiceError as exc:
                return self._reply(exc.status, {"error": exc.message, "status": exc.status})
            except (ValueError, KeyError, TypeError) as exc:
                return self._reply(400, {"error": str(exc), "status": 400})
            except Exception as exc:  # pragma: no cover - defensive
                return self._reply(500, {"error": f"internal error: {exc}", "status": 500})

        def do_GET(self):
            self._route("GET")

        def do_POST(self):
            self._route("POST")

    return Handler


def make_server(port: int = 0, host: str = "127.0.0.1") -> ThreadingHTTPServer:
    store = SessionStore()
    server = ThreadingHTTPServer((host, port), make_handler(store))
    server.store = store  # type: ignore[attr-defined]
    return server


def serve(port: int = 8157, host: str = "127.0.0.1") -> None:
    server = make_server(port, host)
    print(f"session service listening on http://{host}:{server.server_address[1]}")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        server.shutdown()
