"""Command-line interface.

Exit status: 0 when a witness is found or verification passes, 1 when there is
none or verification fails, 2 on usage, I/O or schema errors. ``-`` reads
standard input (or writes standard output).
"""

from __future__ import annotations

import argparse
import logging
import sys

from . import io
from .algebra import normal_form
from .dot import export_dot
from .dsl import format_guest_expr
from .encoders import encode_gs, encode_rlpm, encode_rlsgi, encode_sgi
from .graph import CandidateSubgraph, InvalidCandidate, tensor_product
from .oracles import DEFAULT_CAPS, OracleCapExceeded, gs_oracle, rlpm_oracle, rlsgi_oracle, sgi_oracle
from .regex import RegexSyntaxError, parse_regex
from .solver import PreconditionError, greatest_lgs, solve_emptiness
from .verify import check_all

EXIT_FOUND, EXIT_EMPTY, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(args, text: str) -> None:
    io.save_text(args.output, text)


def _emit_witness(args, w) -> None:
    _emit(args, io.dumps(io.witness_to_dict(w)))
    if args.dot:
        io.save_text(args.dot, export_dot(w))


def _host_or_guest_graph(path: str):
    text = io.load_text(path)
    doc = io.parse_json(text) if text.lstrip().startswith("{") else None
    if doc is not None and doc.get("kind", "host") == "host":
        return io.host_from_dict(doc)
    return io.guest_from_text(text).graph


def cmd_solve(args) -> int:
    guest, host = io.read_guest(args.guest), io.read_host(args.host)
    w = solve_emptiness(guest, host, threads=args.threads)
    if w is None:
        print("no loose graph simulation exists", file=sys.stderr)
        return EXIT_EMPTY
    _emit_witness(args, w)
    return EXIT_FOUND


def cmd_greatest(args) -> int:
    guest, host = io.read_guest(args.guest), io.read_host(args.host)
    try:
        w = greatest_lgs(guest, host)
    except PreconditionError as exc:
        raise UsageError(str(exc)) from exc
    if w is None:
        print("no loose graph simulation exists", file=sys.stderr)
        return EXIT_EMPTY
    _emit_witness(args, w)
    return EXIT_FOUND


def cmd_verify(args) -> int:
    guest, host = io.read_guest(args.guest), io.read_host(args.host)
    cand = io.read_witness(args.witness)
    try:
        report = check_all(guest, host, cand)
    except InvalidCandidate as exc:
        print(f"not a subgraph of the product: {exc}", file=sys.stderr)
        return EXIT_EMPTY
    print(report.summary(), file=sys.stderr if args.output == "-" else sys.stdout)
    return EXIT_FOUND if report.passed else EXIT_EMPTY


def cmd_encode(args) -> int:
    if args.problem == "sgi":
        guest = encode_sgi(io.read_host(args.input))
    elif args.problem == "gs":
        guest = encode_gs(io.read_host(args.input))
    elif args.problem == "rlpm":
        try:
            guest = encode_rlpm(parse_regex(args.input))
        except (RegexSyntaxError, ValueError) as exc:
            raise UsageError(str(exc)) from exc
    else:
        guest = encode_rlsgi(io.read_decorated(args.input))
    _emit(args, io.dumps(io.guest_to_dict(guest)))
    if args.dot:
        io.save_text(args.dot, export_dot(guest))
    return EXIT_FOUND


def cmd_oracle(args) -> int:
    host = io.read_host(args.host)
    caps = {**DEFAULT_CAPS}
    if args.max_query_nodes is not None:
        caps["query_nodes"] = args.max_query_nodes
    if args.max_host_nodes is not None:
        caps["host_nodes"] = args.max_host_nodes
    try:
        if args.problem == "sgi":
            result = sgi_oracle(io.read_host(args.query), host, caps)
            payload = None if result is None else {"phi": dict(sorted(result.items()))}
        elif args.problem == "gs":
            rel = gs_oracle(io.read_host(args.query), host, caps)
            payload = None if rel is None else {"relation": [list(p) for p in sorted(rel)]}
        elif args.problem == "rlpm":
            found = rlpm_oracle(parse_regex(args.query), host, caps)
            payload = {"match": True} if found else None
        else:
            result = rlsgi_oracle(io.read_decorated(args.query), host, caps)
            payload = None if result is None else {"phi": dict(sorted(result.items()))}
    except (OracleCapExceeded, RegexSyntaxError) as exc:
        raise UsageError(str(exc)) from exc
    if payload is None:
        print("no match", file=sys.stderr)
        return EXIT_EMPTY
    _emit(args, io.dumps(payload))
    return EXIT_FOUND


def cmd_product(args) -> int:
    g, h = _host_or_guest_graph(args.left), _host_or_guest_graph(args.right)
    p = tensor_product(g, h)
    _emit_witness(args, CandidateSubgraph.from_graph(p))
    return EXIT_FOUND


def cmd_normalform(args) -> int:
    _emit(args, format_guest_expr(normal_form(io.read_guest(args.guest))) + "\n")
    return EXIT_FOUND


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lgs", description="Loose graph simulation toolkit")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, dot=True):
        p.add_argument("-o", "--output", default="-", help="output file (default: stdout)")
        if dot:
            p.add_argument("--dot", metavar="PATH", help="also write a Graphviz rendering")

    p = sub.add_parser("solve", help="find an LGS with the general solver")
    p.add_argument("guest")
    p.add_argument("host")
    p.add_argument("--threads", type=int, default=None,
                   help="parallel branches (default: $LGS_THREADS, 0 = sequential)")
    common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("greatest", help="greatest LGS (guests without unique/exclusive nodes)")
    p.add_argument("guest")
    p.add_argument("host")
    common(p)
    p.set_defaults(func=cmd_greatest)

    p = sub.add_parser("verify", help="check a candidate against all five conditions")
    p.add_argument("guest")
    p.add_argument("host")
    p.add_argument("witness")
    common(p, dot=False)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("encode", help="translate a classical query into a guest")
    p.add_argument("problem", choices=["sgi", "gs", "rlpm", "rlsgi"])
    p.add_argument("input", help="query file, or a regular expression for rlpm")
    common(p)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("oracle", help="solve a classical problem directly")
    p.add_argument("problem", choices=["sgi", "gs", "rlpm", "rlsgi"])
    p.add_argument("query", help="query file, or a regular expression for rlpm")
    p.add_argument("host")
    p.add_argument("--max-query-nodes", type=int, metavar="N",
                   help=f"refuse larger queries (default {DEFAULT_CAPS['query_nodes']})")
    p.add_argument("--max-host-nodes", type=int, metavar="N",
                   help=f"refuse larger hosts (default {DEFAULT_CAPS['host_nodes']})")
    common(p, dot=False)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("product", help="tensor product of two graphs")
    p.add_argument("left")
    p.add_argument("right")
    common(p)
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("normalform", help="print a guest as a sum of products of elementary guests")
    p.add_argument("guest")
    common(p, dot=False)
    p.set_defaults(func=cmd_normalform)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_FOUND
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, io.SchemaError, OSError, ValueError) as exc:
        print(f"lgs: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
