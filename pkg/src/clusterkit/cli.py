"""Command-line interface.

All subcommands emit JSON on stdout (sorted keys, canonical polynomial
strings, hence byte-deterministic); ``--pretty`` switches to indented output.
Exit codes: 0 success, 2 malformed input, 3 budget exceeded, 4 invariant
violation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .dynkin import dynkin
from .errors import (
    BudgetExceededError,
    ClusterKitError,
    InvariantViolation,
    ParseError,
)
from .polygon import (
    PolygonTriangulation,
    all_triangulations,
    catalan,
    flip_graph,
    flip_is_mutation,
    plucker_check,
)
from .quiver import ExchangeMatrix, Quiver, mutation_class
from .seed import Seed, exchange_graph, is_finite_type, verify_laurent
from .ysystem import (
    bipartite_blocks,
    detect_period,
    restricted_y_pattern,
    square_product_blocks,
    variant,
    y_system_run,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_BUDGET = 3
EXIT_INVARIANT = 4


def _env_budget(name: str, default: int) -> int:
    raw = os.environ.get(f"CLUSTERKIT_BUDGET_{name}")
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError as exc:
        raise ParseError(f"CLUSTERKIT_BUDGET_{name} must be an integer") from exc


def _emit(payload: dict, pretty: bool) -> None:
    if pretty:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(json.dumps(payload, sort_keys=True, separators=(",", ":")))


def _parse_path(text: str) -> list[int]:
    try:
        path = [int(tok) for tok in text.split()]
    except ValueError as exc:
        raise ParseError(f"bad mutation path {text!r}: {exc}") from exc
    if any(k < 1 for k in path):
        raise ParseError("mutation path indices are 1-based positives")
    return path


def _read_json_file(path: str) -> dict | list:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}") from exc


# -- subcommands --------------------------------------------------------------------


def _cmd_mutate(args) -> int:
    path = _parse_path(args.path)
    if args.seed:
        seed = Seed.from_json_dict(_read_json_file(args.seed))
        seed = seed.mutate_path(path)
        _emit({"seed": seed.to_json_dict()}, args.pretty)
    elif args.quiver:
        q = Quiver.from_json_dict(_read_json_file(args.quiver))
        for k in path:
            q = q.mutate(k)
        _emit({"quiver": q.to_json_dict()}, args.pretty)
        if args.dot:
            Path(args.dot).write_text(q.to_dot() + "\n")
    elif args.matrix:
        b = ExchangeMatrix.from_json(_read_json_file(args.matrix))
        for k in path:
            b = b.mutate(k)
        _emit({"matrix": b.to_json()}, args.pretty)
    else:
        raise ParseError("mutate needs one of --seed, --quiver, --matrix")
    return EXIT_OK


def _load_seed_source(args) -> Seed:
    if args.seed:
        return Seed.from_json_dict(_read_json_file(args.seed))
    if args.quiver:
        return Seed.initial_geometric(Quiver.from_json_dict(_read_json_file(args.quiver)))
    if args.matrix:
        return Seed.initial_geometric(ExchangeMatrix.from_json(_read_json_file(args.matrix)))
    raise ParseError("expected one of --seed, --quiver, --matrix")


def _cmd_explore(args) -> int:
    seed = _load_seed_source(args)
    budget = args.budget or _env_budget("EXCHANGE", 500)
    graph, exceeded = exchange_graph(seed, budget)
    payload = {
        "exceeded": exceeded,
        "vertices": graph.n_vertices,
        "edges": graph.n_edges,
        "graph": graph.to_json_dict(),
    }
    _emit(payload, args.pretty)
    if args.dot:
        Path(args.dot).write_text(graph.to_dot() + "\n")
    if args.report_dir:
        from .report import render_exchange_graph

        render_exchange_graph(graph, args.report_dir)
    return EXIT_BUDGET if exceeded else EXIT_OK


def _cmd_finite_type(args) -> int:
    if args.quiver:
        b = Quiver.from_json_dict(_read_json_file(args.quiver)).to_matrix()
    elif args.matrix:
        b = ExchangeMatrix.from_json(_read_json_file(args.matrix))
    else:
        raise ParseError("finite-type needs --quiver or --matrix")
    budget = args.budget or _env_budget("MUTCLASS", 500)
    report = is_finite_type(b, budget)
    _emit(report.to_json_dict(), args.pretty)
    return EXIT_BUDGET if report.status == "exceeded" else EXIT_OK


def _cmd_laurent_verify(args) -> int:
    seed = _load_seed_source(args)
    report = verify_laurent(seed, _parse_path(args.path))
    _emit(report.to_json_dict(), args.pretty)
    return EXIT_OK if report.all_laurent else EXIT_INVARIANT


def _cmd_y_period(args) -> int:
    names = [args.dynkin] + ([args.pair] if args.pair else [])
    try:
        var = variant(*names, allow_large=args.allow_large)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    max_steps = args.max_steps or max(var.bound, _env_budget("YSTEPS", 200))
    report = detect_period(var, max_steps)
    payload = report.to_json_dict()
    if args.check_pattern:
        payload["pattern"] = _pattern_payload(names)
    state = None
    if args.trace or args.report_dir:
        steps = report.period if report.period else min(max_steps, var.bound)
        state = y_system_run(var, steps)
    if args.trace and state is not None:
        payload["trace"] = [[t, row] for t, row in state.trace_rows()]
    _emit(payload, args.pretty)
    if args.report_dir and state is not None:
        from .report import render_y_trace

        render_y_trace(state, args.report_dir)
    return EXIT_OK if report.found else EXIT_BUDGET


def _pattern_payload(names: list[str]) -> dict:
    from .quiver import square_product

    diagrams = [dynkin(n) for n in names]
    if any(not d.is_simply_laced() for d in diagrams):
        return {"skipped": "restricted patterns need simply-laced diagrams"}
    if len(diagrams) == 1:
        q = diagrams[0].bipartite_quiver()
        blocks = bipartite_blocks(diagrams[0])
    else:
        q = square_product(diagrams[0].bipartite_quiver(), diagrams[1].bipartite_quiver())
        blocks = square_product_blocks(diagrams[0], diagrams[1])
    report, _ = restricted_y_pattern(q, blocks, max_iters=_env_budget("YSTEPS", 200))
    return report.to_json_dict()


def _cmd_polygon(args) -> int:
    if args.action == "flip-graph":
        graph = flip_graph(args.d)
        payload = {
            "d": args.d,
            "triangulations": graph.n_vertices,
            "catalan": catalan(args.d - 2),
            "edges": graph.n_edges,
            "connected": graph.is_connected(),
            "graph": graph.to_json_dict(),
        }
        _emit(payload, args.pretty)
        if args.dot:
            Path(args.dot).write_text(graph.to_dot() + "\n")
        if args.report_dir:
            from .report import render_flip_graph

            render_flip_graph(graph, args.report_dir)
        return EXIT_OK
    if args.action == "plucker-check":
        report = plucker_check(args.d)
        _emit(report.to_json_dict(), args.pretty)
        return EXIT_OK if report.ok else EXIT_INVARIANT
    if args.action == "flip-is-mutation":
        if args.triangulation:
            tris = [PolygonTriangulation.from_json_dict(_read_json_file(args.triangulation))]
        else:
            tris = all_triangulations(args.d)
        reports = [flip_is_mutation(t) for t in tris]
        payload = {
            "triangulations": len(tris),
            "checked": sum(r.checked for r in reports),
            "ok": all(r.ok for r in reports),
            "mismatches": [m for r in reports for m in r.mismatches],
        }
        _emit(payload, args.pretty)
        return EXIT_OK if payload["ok"] else EXIT_INVARIANT
    raise ParseError(f"unknown polygon action {args.action!r}")


def _cmd_mutation_class(args) -> int:
    b = ExchangeMatrix.from_json(_read_json_file(args.matrix))
    budget = args.budget or _env_budget("MUTCLASS", 500)
    reps, exceeded = mutation_class(b, budget)
    payload = {
        "exceeded": exceeded,
        "size": len(reps),
        "representatives": [r.to_json() for r in reps] if args.full else None,
    }
    _emit(payload, args.pretty)
    return EXIT_BUDGET if exceeded else EXIT_OK


def _cmd_serve(args) -> int:
    from .service import run_server

    run_server(host=args.host, port=args.port, static_dir=args.static_dir)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clusterkit",
        description="Exact quiver mutation, cluster dynamics, and Y-system periodicity",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--pretty", action="store_true", help="indent the JSON output")

    def add_sources(p, with_seed=True):
        if with_seed:
            p.add_argument("--seed", help="seed JSON file")
        p.add_argument("--quiver", help="quiver JSON file")
        p.add_argument("--matrix", help="matrix JSON file (array of rows)")

    p = sub.add_parser("mutate", help="apply a mutation path")
    add_sources(p)
    p.add_argument("--path", required=True, help='whitespace-separated 1-based indices, e.g. "1 2 1"')
    p.add_argument("--dot", help="write the mutated quiver as DOT")
    add_common(p)
    p.set_defaults(func=_cmd_mutate)

    p = sub.add_parser("explore", help="enumerate the exchange graph")
    add_sources(p)
    p.add_argument("--budget", type=int, help="vertex budget (default env or 500)")
    p.add_argument("--dot", help="write the graph as DOT")
    p.add_argument("--report-dir", help="write figure and CSV reports here")
    add_common(p)
    p.set_defaults(func=_cmd_explore)

    p = sub.add_parser("finite-type", help="Cartan-Killing type of a matrix, if finite")
    add_sources(p, with_seed=False)
    p.add_argument("--budget", type=int)
    add_common(p)
    p.set_defaults(func=_cmd_finite_type)

    p = sub.add_parser("laurent-verify", help="check the Laurent property along a path")
    add_sources(p)
    p.add_argument("--path", required=True)
    add_common(p)
    p.set_defaults(func=_cmd_laurent_verify)

    p = sub.add_parser("y-period", help="exact Y-system periodicity for Dynkin data")
    p.add_argument("--dynkin", required=True, help="e.g. A2, D4, G2")
    p.add_argument("--pair", help="second diagram for the pair recurrence")
    p.add_argument("--max-steps", type=int)
    p.add_argument("--allow-large", action="store_true",
                   help="lift the desk-scale size gates (rank > 5, pair size > 8)")
    p.add_argument("--trace", action="store_true", help="include the full value trace")
    p.add_argument("--check-pattern", action="store_true",
                   help="also run the restricted Y-pattern on the (square product) quiver")
    p.add_argument("--report-dir", help="write trace CSV and complexity figure here")
    add_common(p)
    p.set_defaults(func=_cmd_y_period)

    p = sub.add_parser("polygon", help="triangulation combinatorics")
    p.add_argument("action", choices=["flip-graph", "plucker-check", "flip-is-mutation"])
    p.add_argument("--d", type=int, default=6, help="polygon size")
    p.add_argument("--triangulation", help="triangulation JSON file (flip-is-mutation)")
    p.add_argument("--dot", help="write the flip graph as DOT")
    p.add_argument("--report-dir", help="write figure and CSV reports here")
    add_common(p)
    p.set_defaults(func=_cmd_polygon)

    p = sub.add_parser("mutation-class", help="enumerate a matrix mutation class")
    p.add_argument("--matrix", required=True)
    p.add_argument("--budget", type=int)
    p.add_argument("--full", action="store_true", help="include all representatives")
    add_common(p)
    p.set_defaults(func=_cmd_mutation_class)

    p = sub.add_parser("serve", help="run the HTTP JSON service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8060)
    p.add_argument("--static-dir", help="directory of UI assets to serve at /")
    add_common(p)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (IndexError, ZeroDivisionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ClusterKitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
