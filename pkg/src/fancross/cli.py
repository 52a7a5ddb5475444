"""Command-line interface: ``fancross <command> ...``.

Exit codes: 0 success, 1 the checked property fails, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from fancross import catalog
from fancross.document import DocumentError, dumps, load, to_dict
from fancross.embedding import Graph, validate
from fancross.enumerate import FILTERS, EnumSpec, InfeasibleSpec, enumerate_embeddings
from fancross.isomorphism import map_isomorphic
from fancross.patterns import verdicts
from fancross.render import RenderError, render_svg
from fancross.rerouter import LemmaError, RerouteFailure, fan_planarize, make_fan_crossing

OK, FAIL, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _load(path: str):
    try:
        return load(path)
    except OSError as err:
        raise UsageError(f"{path}: {err.strerror}") from err
    except DocumentError as err:
        raise UsageError(f"{path}: {err}") from err


def _load_graph(path: str) -> Graph:
    """A graph file is ``{"n": .., "edges": [[u, v], ...]}`` or any embedding document."""
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as err:
        raise UsageError(f"{path}: {err.strerror}") from err
    except json.JSONDecodeError as err:
        raise UsageError(f"{path}: line {err.lineno}, column {err.colno}: {err.msg}") from err
    if not isinstance(doc, dict) or "n" not in doc or "edges" not in doc:
        raise UsageError(f"{path}: expected fields 'n' and 'edges'")
    try:
        n = int(doc["n"])
        edges = [tuple(int(x) for x in e) for e in doc["edges"]]
        if any(len(e) != 2 or not (0 <= e[0] < n and 0 <= e[1] < n) or e[0] == e[1] for e in edges):
            raise ValueError("bad edge")
    except (TypeError, ValueError) as err:
        raise UsageError(f"{path}: edges must be pairs of distinct vertex ids below n") from err
    return Graph.from_edges(n, edges)


def cmd_validate(args) -> int:
    emb, _ = _load(args.file)
    report = validate(emb)
    print(f"{args.file}: {report}")
    return OK if report.ok else FAIL


def _require_valid(emb, path: str) -> None:
    report = validate(emb)
    if not report.ok:
        raise UsageError(f"{path}: not a valid embedding: {report}")


def cmd_classify(args) -> int:
    emb, _ = _load(args.file)
    _require_valid(emb, args.file)
    report = verdicts(emb)
    if args.json:
        print(report.to_json())
        return OK
    d = report.to_dict()
    print(f"n={emb.n} m={emb.m} crossings={d['crossings']} (5n-10 = {d['density']['bound']})")
    for k, v in d["verdicts"].items():
        print(f"{k.replace('_', '-')}: {'yes' if v else 'no'}")
    print(f"independent crossings: {len(d['independent_crossings'])}")
    print(f"triangle-crossings: {len(d['triangle_crossings'])}")
    print(f"configuration II instances: {len(d['config_ii'])}")
    return OK


def cmd_transform(args) -> int:
    emb, meta = _load(args.file)
    _require_valid(emb, args.file)
    try:
        if args.to == "fan-crossing":
            out, trace = make_fan_crossing(emb)
        else:
            out, trace = fan_planarize(emb)
    except (LemmaError, RerouteFailure) as err:
        print(f"transform failed: {err}", file=sys.stderr)
        return FAIL
    text = dumps(out, meta)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if args.trace:
        log = {"input": to_dict(emb, meta), "output": to_dict(out, meta), "trace": trace.to_dict()}
        Path(args.trace).write_text(json.dumps(log, indent=1) + "\n", encoding="utf-8")
    if args.expect_iso:
        ref, _ = _load(args.expect_iso)
        if not map_isomorphic(out, ref):
            print(f"output is not isomorphic to {args.expect_iso}", file=sys.stderr)
            return FAIL
        print(f"output is isomorphic to {args.expect_iso}", file=sys.stderr)
    return OK


def cmd_enumerate(args) -> int:
    graph = _load_graph(args.graph)
    if args.filter is not None and args.filter not in FILTERS:
        raise UsageError(f"unknown filter {args.filter!r}; choose from {', '.join(FILTERS)}")
    spec = EnumSpec(graph, args.max_crossings, dedupe=args.dedupe, filter=args.filter, ceiling=args.ceiling)
    try:
        count = 0
        for emb in enumerate_embeddings(spec):
            print(json.dumps(to_dict(emb), separators=(",", ":")))
            count += 1
    except InfeasibleSpec as err:
        raise UsageError(str(err)) from err
    print(f"{count} embeddings", file=sys.stderr)
    return OK


def cmd_catalog(args) -> int:
    if args.emit:
        try:
            emb = catalog.entry(args.emit)
        except KeyError as err:
            raise UsageError(err.args[0]) from err
        text = dumps(emb, catalog.entry_meta(args.emit))
        if args.out:
            Path(args.out).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
        return OK
    for name in catalog.names():
        emb = catalog.entry(name)
        note = catalog.entry_meta(name).get("note", "")
        print(f"{name:10s} n={emb.n:<4d} m={emb.m:<4d} crossings={emb.crossing_count():<4d} {note}")
    return OK


def cmd_render(args) -> int:
    emb, meta = _load(args.file)
    _require_valid(emb, args.file)
    labels = {v: k for k, v in meta.get("labels", {}).items()}
    try:
        svg = render_svg(emb, labels=labels, seed=args.seed)
    except RenderError as err:
        print(f"render failed: {err}", file=sys.stderr)
        return FAIL
    Path(args.svg).write_text(svg, encoding="utf-8")
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fancross", description="Fan-crossing and fan-planar embedding toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check an embedding document")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("classify", help="report crossing patterns")
    s.add_argument("file")
    s.add_argument("--json", action="store_true", help="machine-readable report")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("transform", help="reroute edges")
    s.add_argument("file")
    s.add_argument("--to", required=True, choices=["fan-crossing", "fan-planar"])
    s.add_argument("--out", help="write the output document here instead of stdout")
    s.add_argument("--trace", help="write input, output and rerouting trace as JSON")
    s.add_argument("--expect-iso", metavar="FILE", help="fail unless the output is isomorphic to FILE")
    s.set_defaults(func=cmd_transform)

    s = sub.add_parser("enumerate", help="list embeddings of a graph as JSON lines")
    s.add_argument("--graph", required=True)
    s.add_argument("--max-crossings", type=int, required=True)
    s.add_argument("--dedupe", action="store_true", help="one embedding per isomorphism class")
    s.add_argument("--filter", help="keep only embeddings with this property")
    s.add_argument("--ceiling", type=int, help="feasibility ceiling on the raw search space")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("catalog", help="list or emit named embeddings")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--list", action="store_true")
    g.add_argument("--emit", metavar="NAME")
    s.add_argument("--out")
    s.set_defaults(func=cmd_catalog)

    s = sub.add_parser("render", help="draw an embedding as SVG")
    s.add_argument("file")
    s.add_argument("--svg", required=True)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_render)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code not in (0, None) else OK
    try:
        return args.func(args)
    except UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
