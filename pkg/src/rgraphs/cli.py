"""Command-line front end.

Exit codes: 0 success or positive answer, 1 definite negative answer (or a
rejected certificate), 2 usage or parse error, 3 search budget exceeded,
4 internal defect.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .analysis import verify_r_graph
from .certificates import (
    Certificate,
    check_certificate,
    coloring_certificate,
    cover_certificate,
    crossing_certificate,
    trace_certificate,
    tree_certificate,
    verdict_certificate,
)
from .errors import BudgetExceeded, GraphFormatError, InternalDefect, OracleGap, PreconditionViolation
from .fixtures import NAMED, named
from .graphio import format_graph, read_graph
from .matching import DEFAULT_BUDGET, edge_color, find_tr_pm

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_BUDGET, EXIT_DEFECT = 0, 1, 2, 3, 4


def _emit(cert: Certificate, out: str | None) -> None:
    text = cert.dumps()
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _note(msg: str) -> None:
    print(msg, file=sys.stderr)


def cmd_verify(args) -> int:
    g = read_graph(args.graph)
    v = verify_r_graph(g, args.r)
    _emit(verdict_certificate(g, v), args.out)
    if v.is_r_graph:
        return EXIT_OK
    _note(f"not an r-graph for r={args.r}: {v.reason}, witness {sorted(v.witness.side)}")
    return EXIT_NEGATIVE


def cmd_cover(args) -> int:
    g = read_graph(args.graph)
    cover = find_tr_pm(g, args.t, args.r, args.budget)
    if cover is None:
        _note(f"no ({args.t},{args.r})-PM exists")
        return EXIT_NEGATIVE
    _emit(cover_certificate(g, cover), args.out)
    return EXIT_OK


def cmd_color(args) -> int:
    g = read_graph(args.graph)
    col = edge_color(g, args.k, args.budget)
    if col is None:
        _note(f"no proper {args.k}-edge-colouring exists")
        return EXIT_NEGATIVE
    _emit(coloring_certificate(g, col), args.out)
    return EXIT_OK


def cmd_reduce(args) -> int:
    from .reduction import REDUCERS, PlanarOracle

    g = read_graph(args.graph)
    cover, trace = REDUCERS[args.mode](g, args.t, args.r, PlanarOracle(budget=args.budget), args.budget)
    _emit(cover_certificate(g, cover), args.out)
    if args.trace_out:
        _emit(trace_certificate(g, trace), args.trace_out)
    if args.dot:
        Path(args.dot).write_text(trace.to_dot(), encoding="utf-8")
    _note("steps: " + ", ".join(sorted(trace.kinds())))
    return EXIT_OK


def cmd_decompose(args) -> int:
    from .topology import wagner_decompose

    g = read_graph(args.graph)
    _emit(tree_certificate(g, wagner_decompose(g, args.forbidden)), args.out)
    return EXIT_OK


def cmd_crossing(args) -> int:
    from .topology import crossing_at_most_one

    g = read_graph(args.graph)
    c = crossing_at_most_one(g)
    _emit(crossing_certificate(g, c), args.out)
    return EXIT_NEGATIVE if c.verdict == "more" else EXIT_OK


def cmd_check(args) -> int:
    g = read_graph(args.graph)
    try:
        cert = Certificate.loads(Path(args.certificate).read_text(encoding="utf-8"))
    except (ValueError, json.JSONDecodeError) as exc:
        _note(f"cannot read certificate: {exc}")
        return EXIT_USAGE
    reasons = check_certificate(g, cert)
    if reasons:
        for r in reasons:
            _note(f"rejected: {r}")
        return EXIT_NEGATIVE
    _note(f"ok: {cert.kind}")
    return EXIT_OK


def cmd_census(args) -> int:
    from .census import census

    rows = census(args.r, args.max_n, args.max_mu, args.budget, pm_check=not args.no_pm)
    table = [row.to_json(args.r) for row in rows]
    summary = {
        "r": args.r, "max_n": args.max_n, "max_mu": args.max_mu,
        "graphs": len(rows), "r_graphs": sum(row.is_r_graph for row in rows),
        "class_two": sum(1 for row in rows if row.class_one is False),
    }
    text = json.dumps({"summary": summary, "rows": table}, indent=1) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    _note(f"{summary['r_graphs']} {args.r}-graphs, {summary['class_two']} of class 2")
    return EXIT_OK


def cmd_fixture(args) -> int:
    if args.name is None:
        print("\n".join(sorted(NAMED)))
        return EXIT_OK
    sys.stdout.write(format_graph(named(args.name)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rgraphs", description="Perfect matching covers of r-graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_cmd(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("graph", help="graph file")
        sp.add_argument("--out", help="write the certificate here instead of stdout")
        sp.set_defaults(fn=fn)
        return sp

    sp = graph_cmd("verify", cmd_verify, "decide whether the graph is an r-graph")
    sp.add_argument("--r", type=int, required=True)

    for name, fn, help_ in (("cover", cmd_cover, "exact (t,r)-PM search"),
                            ("reduce", cmd_reduce, "build a (t,r)-PM by reduction to planar pieces")):
        sp = graph_cmd(name, fn, help_)
        sp.add_argument("--t", type=int, required=True)
        sp.add_argument("--r", type=int, required=True)
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
        if name == "reduce":
            sp.add_argument("--mode", choices=("k5free", "k33free", "cr1"), required=True)
            sp.add_argument("--trace-out", help="write the reduction-trace certificate here")
            sp.add_argument("--dot", help="write the trace as a DOT digraph here")

    sp = graph_cmd("color", cmd_color, "exact proper k-edge-colouring")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    sp = graph_cmd("decompose", cmd_decompose, "clique-sum decomposition")
    sp.add_argument("--forbidden", choices=("K5", "K33"), default="K5")

    graph_cmd("crossing", cmd_crossing, "decide crossing number at most one")

    sp = sub.add_parser("check", help="re-verify a certificate against a graph")
    sp.add_argument("graph")
    sp.add_argument("certificate")
    sp.set_defaults(fn=cmd_check)

    sp = sub.add_parser("census", help="class-1 census of small regular multigraphs")
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--max-n", type=int, required=True)
    sp.add_argument("--max-mu", type=int, default=1)
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.add_argument("--no-pm", action="store_true", help="skip the (2,r)-PM column")
    sp.add_argument("--out")
    sp.set_defaults(fn=cmd_census)

    sp = sub.add_parser("fixture", help="print a named graph (or list the names)")
    sp.add_argument("name", nargs="?", choices=sorted(NAMED))
    sp.set_defaults(fn=cmd_fixture)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.fn(args)
    except (GraphFormatError, FileNotFoundError, IsADirectoryError) as exc:
        _note(f"error: {exc}")
        return EXIT_USAGE
    except BudgetExceeded as exc:
        _note(f"budget exceeded: {exc}")
        return EXIT_BUDGET
    except (PreconditionViolation, OracleGap) as exc:
        _note(f"{type(exc).__name__}: {exc}")
        return EXIT_NEGATIVE
    except InternalDefect as exc:
        _note(f"internal defect: {exc}")
        return EXIT_DEFECT


if __name__ == "__main__":
    sys.exit(main())
