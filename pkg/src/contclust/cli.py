"""Command-line interface.

Subcommands: quiver, compat, phi, polygon, gon, embed, tinfty, path,
transform, render, serve.  Pass --json for machine-readable output.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import arcs, clusters as cl, embeddings as em, gons, mutation as mu, render, service
from . import intervals as iv
from . import transforms as tr
from .numbers import as_ext
from .quiver import QuiverTypeA, STRAIGHT_DESCENDING, quiver_from_positions


def _parse_quiver(args) -> QuiverTypeA:
    if getattr(args, "quiver_json", None):
        return QuiverTypeA.from_json(args.quiver_json)
    sinks = [Fraction(s) for s in args.sinks.split(",")] if getattr(args, "sinks", None) else []
    sources = [Fraction(s) for s in args.sources.split(",")] if getattr(args, "sources", None) else []
    if not sinks and not sources:
        return STRAIGHT_DESCENDING
    return quiver_from_positions(sinks, sources)


def _emit(args, payload: dict, text: str = None):
    if getattr(args, "json", False) or text is None:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def cmd_quiver(args) -> int:
    q = _parse_quiver(args)
    payload = {"quiver": q.to_json_dict(), "index0": q.index0}
    if args.segment_of is not None:
        kind, n = q.segment_of(as_ext(args.segment_of))
        payload["segment_of"] = {"kind": kind, "index": n}
    if args.precede is not None:
        y, x = (as_ext(v) for v in args.precede.split(","))
        payload["precede"] = q.precede(y, x)
    _emit(args, payload)
    return 0


def cmd_compat(args) -> int:
    q = _parse_quiver(args)
    m1, m2 = iv.parse_interval(args.first), iv.parse_interval(args.second)
    ok = arcs.e_compatible(q, m1, m2)
    payload = {"first": str(m1), "second": str(m2), "compatible": ok}
    if q.is_straight:
        payload["oracle"] = iv.straight_compat_oracle(m1, m2)
    _emit(args, payload, f"{m1} and {m2}: {'compatible' if ok else 'incompatible'}")
    return 0


def cmd_phi(args) -> int:
    q = _parse_quiver(args)
    if args.invert:
        arc = arcs.Arc.from_json_dict(json.loads(args.invert))
        m = arcs.interval_of_arc(q, arc)
        _emit(args, {"interval": str(m)}, str(m))
        return 0
    m = iv.parse_interval(args.interval)
    arc = arcs.arc_of_interval(q, m)
    src, tgt = arcs.orient(q, arc)
    payload = {"arc": arc.to_json_dict(), "source": str(src), "target": str(tgt)}
    _emit(args, payload, f"{m} -> {arc} (source {src})")
    return 0


def cmd_polygon(args) -> int:
    if args.count or args.dot is None:
        tris = gons.enumerate_triangulations(args.n)
        payload = {"n": args.n, "triangulations": len(tris)}
        if not args.count:
            payload["first"] = tris[0].to_json_dict()
        _emit(args, payload, f"(n+3)-gon with n={args.n}: {len(tris)} triangulations")
    if args.dot is not None:
        graph = gons.exchange_graph(args.n)
        with open(args.dot, "w") as fh:
            fh.write(graph.to_dot())
        print(f"wrote exchange graph to {args.dot}", file=sys.stderr)
    return 0


def cmd_gon(args) -> int:
    with open(args.input) as fh:
        t = gons.GonTriangulation.from_json_dict(json.load(fh))
    t.validate()
    payload = {"fountains": gons.classify_fountains(t).__dict__}
    if args.complete:
        completed = gons.prufer_completion(gons.adic_completion(
            gons.GonTriangulation(gons.COMPLETED, None, t.explicit, t.tails)))
        payload["completed"] = completed.to_json_dict()
    _emit(args, payload)
    return 0


def _parse_chain(chain: str) -> dict:
    """Parse a chain spec like "m:1->n:3->inf->infbar->R" down to its
    polygon sizes; the infinite stops are implied by the harness."""
    out = {}
    for leg in chain.split("->"):
        leg = leg.strip()
        if ":" in leg:
            key, value = leg.split(":", 1)
            out[key.strip()] = int(value)
    return out


def cmd_embed(args) -> int:
    rng = random.Random(args.seed)
    m, n = args.m, args.n
    if args.chain:
        parsed = _parse_chain(args.chain)
        m = parsed.get("m", m)
        n = parsed.get("n", n)
    if args.input:
        with open(args.input) as fh:
            t = gons.GonTriangulation.from_json_dict(json.load(fh))
    else:
        t = gons.enumerate_triangulations(m)[0]
    report = em.check_commutativity(t, n, em.DEFAULT_ANCHORS, rng)
    report["centered"] = em.check_centered_chain(t, n)
    _emit(args, report, f"embedding chain commutes for m={report['m']}, n={report['n']}")
    return 0


def cmd_tinfty(args) -> int:
    rep = em.background_cluster()
    payload = {"explicit": sorted(str(m) for m in rep.explicit)}
    if args.member:
        m = iv.parse_interval(args.member)
        payload["member"] = rep.member(m)
        payload["query"] = str(m)
    _emit(args, payload)
    return 0


def cmd_path(args) -> int:
    path = mu.proj_to_inj_path(args.epsilon)
    frames = args.frames or (args.count if args.action == "frames" else None)
    if frames:
        svgs = render.render_animation(path, frames)
        for k, svg in enumerate(svgs):
            name = f"{args.out_prefix}{k}.svg"
            with open(name, "w") as fh:
                fh.write(svg)
        print(f"wrote {len(svgs)} frames to {args.out_prefix}*.svg", file=sys.stderr)
        return 0
    rep = path.at(args.t, args.tier)
    step = path.step(args.t)
    payload = {
        "t": args.t,
        "explicit": sorted(str(m) for m in rep.explicit),
        "families": [f.to_json_dict() for f in rep.families],
        "step": [s if isinstance(s, str) else str(s) for s in step],
    }
    _emit(args, payload)
    return 0


def cmd_transform(args) -> int:
    if args.invert:
        p = tr.f_inverse(tr.CCPoint(float(args.a), float(args.b)))
        _emit(args, {"x": p.x, "y": p.y}, f"({p.x:.12g}, {p.y:.12g})")
    else:
        c = tr.f_map(tr.StripPoint(float(args.x), float(args.y)))
        _emit(args, {"a": c.a, "b": c.b}, f"({c.a:.12g}, {c.b:.12g})")
    return 0


def cmd_render(args) -> int:
    if args.polygon_n is not None:
        t = gons.enumerate_triangulations(args.polygon_n)[0]
        svg = render.render_polygon(t)
    elif args.preset == "projectives":
        svg = render.render_cluster(mu.projectives_cluster())
    elif args.preset == "injectives":
        svg = render.render_cluster(mu.injectives_cluster())
    else:
        svg = render.render_cluster(em.background_cluster())
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(svg)
        print(f"wrote {args.out}", file=sys.stderr)
    else:
        print(svg)
    return 0


def cmd_serve(args) -> int:
    service.serve(args.port, args.host)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="contclust", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--sinks", help="comma-separated sink positions")
        sp.add_argument("--sources", help="comma-separated source positions")
        sp.add_argument("--quiver-json", help="quiver as JSON")

    sp = sub.add_parser("quiver", help="inspect a quiver")
    common(sp)
    sp.add_argument("--segment-of", help="locate a point")
    sp.add_argument("--precede", help="y,x pair to test the partial order")
    sp.set_defaults(func=cmd_quiver)

    sp = sub.add_parser("compat", help="compatibility of two intervals")
    common(sp)
    sp.add_argument("first")
    sp.add_argument("second")
    sp.set_defaults(func=cmd_compat)

    sp = sub.add_parser("phi", help="interval <-> arc translation")
    common(sp)
    sp.add_argument("interval", nargs="?", help='interval like "[0,1)"')
    sp.add_argument("--invert", help="arc JSON to convert back")
    sp.set_defaults(func=cmd_phi)

    sp = sub.add_parser("polygon", help="polygon triangulations and exchange graph")
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("--count", action="store_true")
    sp.add_argument("--dot", help="write the exchange graph as DOT")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_polygon)

    sp = sub.add_parser("gon", help="infinity-gon triangulation tools")
    sp.add_argument("--input", required=True, help="triangulation JSON file")
    sp.add_argument("--complete", action="store_true", help="apply both completions")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_gon)

    sp = sub.add_parser("embed", help="check the embedding chains on a fixture")
    sp.add_argument("--m", type=int, default=1)
    sp.add_argument("--n", type=int, default=3)
    sp.add_argument("--chain", help='chain spec like "m:1->n:3->inf->infbar->R"')
    sp.add_argument("--input", help="polygon triangulation JSON")
    sp.add_argument("--seed", type=int, default=7)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_embed)

    sp = sub.add_parser("tinfty", help="background cluster membership")
    sp.add_argument("--member", help='interval like "(1/2,5/8)"')
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_tinfty)

    sp = sub.add_parser("path", help="projectives-to-injectives path")
    sp.add_argument("action", nargs="?", choices=("eval", "frames"), default="eval")
    sp.add_argument("--t", type=float, default=0.5)
    sp.add_argument("--tier", type=int, choices=(0, 1), default=1)
    sp.add_argument("--epsilon", type=float, default=0.1)
    sp.add_argument("--frames", type=int, help="write this many SVG frames")
    sp.add_argument("--count", type=int, default=6, help="frame count for the frames action")
    sp.add_argument("--out-prefix", default="frame")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_path)

    sp = sub.add_parser("transform", help="strip <-> interval coordinates")
    sp.add_argument("--x", type=float)
    sp.add_argument("--y", type=float)
    sp.add_argument("--invert", action="store_true")
    sp.add_argument("--a", type=float)
    sp.add_argument("--b", type=float)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_transform)

    sp = sub.add_parser("render", help="render a diagram to SVG")
    sp.add_argument("--preset", default="projectives", choices=("projectives", "injectives", "background"))
    sp.add_argument("--polygon-n", type=int)
    sp.add_argument("--out")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_render)

    sp = sub.add_parser("serve", help="run the session service")
    sp.add_argument("--port", type=int, default=8157)
    sp.add_argument("--host", default="127.0.0.1")
    sp.set_defaults(func=cmd_serve)

    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
