"""Command-line entry point: ``rainbowrc {analyze,color,verify,rc,gen,batch}``.

Exit codes: 0 ok, 1 not rainbow connected or internal verification failure,
2 usage or format error, 3 precondition violated, 4 budget exhausted.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import families
from .diam3 import color_diam3
from .errors import (
    BudgetExhausted,
    ColoringError,
    FormatError,
    GraphError,
    PreconditionError,
    VerificationFailure,
)
from .exact import EXHAUSTED, exact_rc
from .fileio import format_coloring, format_graph, read_coloring, read_graph
from .graph import find_bridges, is_connected, line_graph, metrics, triangle_free_edges
from .radius import color_by_radius
from .verify import rainbow_connected

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_PRECONDITION, EXIT_BUDGET = 0, 1, 2, 3, 4

METHODS = ("radius", "diam3", "auto")


class UsageError(Exception):
    pass


def _pairs1(edges):
    return [[a + 1, b + 1] for a, b in sorted(edges)]


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def analysis_report(g) -> dict:
    connected = is_connected(g)
    loose = triangle_free_edges(g)
    report = {
        "n": g.n,
        "m": g.m,
        "connected": connected,
        "bridges": _pairs1(find_bridges(g)),
        "all_edges_in_triangle": not loose,
        "triangle_free_edges": _pairs1(loose),
        "radius": None,
        "diameter": None,
        "centers": None,
    }
    if connected and g.n:
        ms = metrics(g)
        report.update(radius=ms.radius, diameter=ms.diameter,
                      centers=[c + 1 for c in ms.centers])
    return report


def run_method(g, method, crossed=True, retry_anchors=True):
    """Color ``g``; returns ``(coloring, method actually used, color bound)``."""
    if method == "auto":
        method = "diam3" if triangle_free_edges(g) else "radius"
    if method == "radius":
        c = color_by_radius(g)
        return c, "radius", 3 * metrics(g).radius
    c = color_diam3(g, crossed=crossed, retry_anchors=retry_anchors)
    return c, "diam3", 9


# -- commands ----------------------------------------------------------------

def cmd_analyze(args, out):
    g = read_graph(args.graph)
    out.write(_dump(analysis_report(g)) + "\n")
    return EXIT_OK


def cmd_color(args, out):
    g = read_graph(args.graph)
    try:
        c, used, bound = run_method(g, args.method, crossed=not args.uncrossed,
                                    retry_anchors=not args.strict_anchor)
    except VerificationFailure as exc:
        out.write(_dump({"verified": False, "error": str(exc),
                         "diagnostic": exc.diagnostic}) + "\n")
        return EXIT_FALSE
    text = format_coloring(c)
    status = {"method": used, "colors": c.n_colors, "bound": bound, "verified": True}
    if args.out:
        Path(args.out).write_text(text)
        out.write(_dump(status) + "\n")
    else:
        out.write(text)
        sys.stderr.write(_dump(status) + "\n")
    if args.provenance:
        tags = {f"{a + 1}-{b + 1}": tag for (a, b), tag in sorted(c.provenance.items())}
        Path(args.provenance).write_text(json.dumps(tags, indent=1, sort_keys=True) + "\n")
    return EXIT_OK


def _parse_allowed(spec):
    if spec is None:
        return None
    try:
        return {int(x) for x in spec.split(",") if x.strip()}
    except ValueError:
        raise UsageError(f"bad --allowed value {spec!r}") from None


def cmd_verify(args, out):
    g = read_graph(args.graph)
    c = read_coloring(args.coloring)
    try:
        c.check_against(g)
    except ColoringError as exc:
        raise FormatError(f"coloring does not match graph: {exc}") from None
    pairs = None
    if args.pair:
        pairs = []
        for a, b in args.pair:
            if not (1 <= a <= g.n and 1 <= b <= g.n):
                raise UsageError(f"pair ({a}, {b}) out of range")
            pairs.append((a - 1, b - 1))
    report = rainbow_connected(g, c, allowed=_parse_allowed(args.allowed),
                               pairs=pairs, paths=args.paths)
    if report:
        out.write("rainbow connected\n")
    else:
        s, t = report.witness
        out.write("not rainbow connected\n")
        out.write(f"witness {s + 1} {t + 1}\n")
    if args.paths:
        for (s, t), path in sorted(report.paths.items()):
            out.write(f"path {s + 1} {t + 1}: {' '.join(str(x + 1) for x in path)}\n")
    return EXIT_OK if report else EXIT_FALSE


def cmd_rc(args, out):
    g = read_graph(args.graph)
    res = exact_rc(g, max_k=args.max_k, max_nodes=args.max_nodes,
                   max_seconds=args.max_seconds)
    out.write(_dump(res.as_dict(timing=args.timing)) + "\n")
    if args.certificate and res.certificate is not None:
        Path(args.certificate).write_text(format_coloring(res.certificate))
    return EXIT_BUDGET if res.status == EXHAUSTED else EXIT_OK


def make_instance(spec: dict):
    """Build a graph from a generator spec; returns ``(graph, labeled family or None)``."""
    fam = spec.get("family")
    try:
        if fam == "example1":
            lf = families.gen_example1(int(spec["r"]), int(spec["t"]))
            return lf.graph, lf
        if fam == "example2":
            lf = families.gen_example2(int(spec["n"]))
            return lf.graph, lf
        if fam == "random-diam3":
            g = families.gen_random_bridgeless_diam3(
                int(spec["n"]), float(spec["p"]), int(spec["seed"]),
                want_triangle_free_edge=bool(spec.get("triangle_free_edge", True)),
            )
            return g, None
        if fam == "standard":
            return families.gen_standard(spec["kind"], int(spec["n"])), None
        if fam == "regular":
            return families.gen_random_regular(int(spec["n"]), int(spec["d"]),
                                               int(spec["seed"])), None
        if fam == "line-regular":
            base = families.gen_random_regular(int(spec["n"]), int(spec["d"]),
                                               int(spec["seed"]))
            return line_graph(base)[0], None
    except KeyError as exc:
        raise UsageError(f"family {fam!r} needs parameter {exc.args[0]!r}") from None
    raise UsageError(f"unknown family {fam!r}")


def cmd_gen(args, out):
    spec = {k: v for k, v in vars(args).items()
            if k in ("family", "r", "t", "n", "p", "seed", "kind", "d") and v is not None}
    if args.family == "random-diam3":
        spec["triangle_free_edge"] = not args.allow_all_triangles
    if args.family == "line":
        g = line_graph(read_graph(args.source))[0]
        lf = None
    else:
        g, lf = make_instance(spec)
    text = format_graph(g)
    if args.out:
        Path(args.out).write_text(text)
    else:
        out.write(text)
    if args.labels:
        side = lf.sidecar() if lf else {"params": spec, "labels": {}, "branches": []}
        Path(args.labels).write_text(json.dumps(side, indent=1, sort_keys=True) + "\n")
    return EXIT_OK


BATCH_FIELDS = ["id", "family", "params", "seed", "method", "colors", "verified",
                "bound", "status", "wall_time", "rc_status", "rc_lo", "rc_hi"]


def _expand(config):
    rows = []
    default_method = config.get("method", "auto")
    for block in config.get("instances", []):
        seeds = block.get("seeds")
        if seeds is None and "count" in block:
            seeds = list(range(int(block.get("seed", 0)), int(block.get("seed", 0)) + int(block["count"])))
        base = {k: v for k, v in block.items() if k not in ("seeds", "count", "method")}
        method = block.get("method", default_method)
        for seed in (seeds if seeds is not None else [base.get("seed")]):
            spec = dict(base)
            if seed is not None:
                spec["seed"] = seed
            rows.append((spec, method))
    return rows


def _run_instance(job):
    idx, spec, method, solve, timing = job
    params = {k: v for k, v in spec.items() if k not in ("family", "seed")}
    row = {"id": idx, "family": spec.get("family"), "params": _dump(params),
           "seed": spec.get("seed", ""), "method": method, "colors": "",
           "verified": False, "bound": "", "status": "ok", "wall_time": "",
           "rc_status": "", "rc_lo": "", "rc_hi": ""}
    t0 = time.perf_counter()
    try:
        g, _ = make_instance(spec)
        c, used, bound = run_method(g, method)
        row.update(method=used, colors=c.n_colors, bound=bound,
                   verified=bool(rainbow_connected(g, c)))
        if solve:
            res = exact_rc(g, max_nodes=solve.get("max_nodes"),
                           max_seconds=solve.get("max_seconds"))
            row.update(rc_status=res.status, rc_lo=res.lo,
                       rc_hi="" if res.hi is None else res.hi)
    except PreconditionError as exc:
        row["status"] = f"precondition:{exc.reason}"
    except VerificationFailure as exc:
        row["status"] = f"verification-failure:{_dump(exc.diagnostic.get('witness'))}"
    except (BudgetExhausted, GraphError, UsageError) as exc:
        row["status"] = f"error:{exc}"
    if timing:
        row["wall_time"] = f"{time.perf_counter() - t0:.4f}"
    return row


def cmd_batch(args, out):
    try:
        config = json.loads(Path(args.config).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"bad batch config: {exc}") from None
    solve = config.get("solve") or None
    if solve is True:
        solve = {}
    jobs = [(i, spec, method, solve, args.timing)
            for i, (spec, method) in enumerate(_expand(config))]
    if args.workers > 1:
        with ProcessPoolExecutor(args.workers) as pool:
            rows = list(pool.map(_run_instance, jobs))
    else:
        rows = [_run_instance(j) for j in jobs]
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=BATCH_FIELDS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    if args.out:
        Path(args.out).write_text(buf.getvalue())
    else:
        out.write(buf.getvalue())
    return EXIT_OK


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rainbowrc", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="structural report as JSON")
    p.add_argument("graph")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("color", help="construct a verified rainbow coloring")
    p.add_argument("graph")
    p.add_argument("--method", choices=METHODS, default="auto")
    p.add_argument("--out", help="coloring file (default: standard output)")
    p.add_argument("--provenance", help="write edge -> rule tag JSON here")
    p.add_argument("--strict-anchor", action="store_true",
                   help="diam3: use only the smallest triangle-free edge")
    p.add_argument("--uncrossed", action="store_true",
                   help="diam3: pair colors 2/3 as u-A1,v-B1 / u-A3,v-B3")
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("verify", help="check a coloring for rainbow connectivity")
    p.add_argument("graph")
    p.add_argument("coloring")
    p.add_argument("--allowed", help="comma-separated colors paths may use")
    p.add_argument("--pair", nargs=2, type=int, action="append", metavar=("U", "V"),
                   help="check only this pair (repeatable)")
    p.add_argument("--paths", action="store_true", help="print one rainbow path per pair")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("rc", help="exact rainbow connection number (small graphs)")
    p.add_argument("graph")
    p.add_argument("--max-k", type=int)
    p.add_argument("--max-nodes", type=int)
    p.add_argument("--max-seconds", type=float)
    p.add_argument("--certificate", help="write the optimal coloring here")
    p.add_argument("--timing", action="store_true", help="include wall time in the JSON")
    p.set_defaults(func=cmd_rc)

    p = sub.add_parser("gen", help="generate a graph file")
    p.add_argument("family", choices=("example1", "example2", "random-diam3",
                                      "standard", "regular", "line-regular", "line"))
    p.add_argument("--r", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--d", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--kind", choices=("path", "cycle", "complete", "wheel"))
    p.add_argument("--source", help="line: graph file to take the line graph of")
    p.add_argument("--allow-all-triangles", action="store_true",
                   help="random-diam3: do not require a triangle-free edge")
    p.add_argument("--out")
    p.add_argument("--labels", help="write a JSON label sidecar here")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("batch", help="run a JSON-configured experiment to CSV")
    p.add_argument("config")
    p.add_argument("--out")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="fill the wall_time column")
    p.set_defaults(func=cmd_batch)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except (FormatError, UsageError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except PreconditionError as exc:
        sys.stderr.write(f"precondition violated ({exc.reason}): {exc}\n")
        return EXIT_PRECONDITION
    except GraphError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except BudgetExhausted as exc:
        sys.stderr.write(f"budget exhausted: {exc}\n")
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
