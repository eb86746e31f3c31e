"""Command-line front end: convert, mine, filter, inspect, plot, serve.

Commands exchange artifact directories (see artifacts.py).  Exit codes:
0 success, 2 malformed artifact or bad arguments/expression, 3 port busy.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import assoc, viz
from .artifacts import ArtifactError, read_rules, read_transactions, write_artifact
from .filters import FilterError, parse_filter, rule_mask
from .ingest import load_column_specs, transactions_from_csv
from .mine import MiningParams, apriori
from .core import select

EXIT_OK = 0
EXIT_BAD_INPUT = 2
EXIT_PORT_BUSY = 3


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_BAD_INPUT):
        super().__init__(message)
        self.code = code


def cmd_convert(args) -> int:
    specs = load_column_specs(args.specs) if args.specs else None
    try:
        trans = transactions_from_csv(args.csv, specs)
    except (ValueError, OSError) as e:
        raise CliError(f"convert failed: {e}")
    write_artifact(trans, args.out)
    print(f"wrote transactions artifact: {trans.n_rows} transactions, "
          f"{trans.n_cols} items -> {args.out}")
    return EXIT_OK


def cmd_mine(args) -> int:
    try:
        trans = read_transactions(args.transactions)
        params = MiningParams(support=args.support, confidence=args.confidence,
                              minlen=args.minlen, maxlen=args.maxlen,
                              target=args.target)
        result = apriori(trans, params)
    except (ArtifactError, ValueError) as e:
        raise CliError(f"mine failed: {e}")
    write_artifact(result, args.out)
    kind = "rules" if args.target == "rules" else "itemsets"
    print(f"wrote {kind} artifact: {len(result)} {kind} -> {args.out}")
    return EXIT_OK


def cmd_filter(args) -> int:
    try:
        rules = read_rules(args.rules)
        clauses = parse_filter(args.where)
        mask = rule_mask(rules, clauses)
        selected = select(rules, mask)
    except FilterError as e:
        raise CliError(f"bad filter expression: {e}")
    except (ArtifactError, ValueError) as e:
        raise CliError(f"filter failed: {e}")
    write_artifact(selected, args.out)
    print(f"kept {len(selected)} of {len(rules)} rules -> {args.out}")
    return EXIT_OK


def _format_cell(value) -> str:
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return f"{value:.2f}"
    return str(value)


def cmd_inspect(args) -> int:
    try:
        rules = read_rules(args.rules)
        if args.sort:
            rules = assoc.sort_by(rules, args.sort, descending=not args.asc)
        if args.top is not None:
            rules = select(rules, slice(0, args.top))
    except KeyError as e:
        raise CliError(f"inspect failed: no such quality column {e}")
    except (ArtifactError, ValueError) as e:
        raise CliError(f"inspect failed: {e}")
    if args.format == "json":
        sys.stdout.write(assoc.export(rules, "json").decode() + "\n")
        return EXIT_OK
    rows = assoc.render(rules)
    if not rows:
        print("(no rules)")
        return EXIT_OK
    headers = list(rows[0].keys())
    table = [[_format_cell(row[h]) for h in headers] for row in rows]
    widths = [max(len(h), *(len(t[i]) for t in table)) for i, h in enumerate(headers)]
    print("  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip())
    for t in table:
        print("  ".join(c.ljust(w) for c, w in zip(t, widths)).rstrip())
    return EXIT_OK


def cmd_plot(args) -> int:
    try:
        rules = read_rules(args.rules)
        if args.method == "scatter":
            data = viz.scatter_svg(rules, width=args.width, height=args.height)
        elif args.method == "grouped":
            gm = viz.grouped_matrix(rules, k=args.groups)
            obj = {
                "rhs": list(gm.rhs_labels),
                "groups": [{
                    "label": g.label,
                    "rules": list(g.rule_indices),
                    "maxLift": g.max_lift,
                    "lift": g.lift_by_rhs,
                    "support": g.support_by_rhs,
                } for g in gm.groups],
            }
            data = json.dumps(obj, indent=2, ensure_ascii=False).encode()
        else:  # graph
            fmt = "dot" if str(args.out).endswith(".dot") else "json"
            data = viz.graph_data(rules, format=fmt, max_rules=args.max_rules)
    except (ArtifactError, ValueError) as e:
        raise CliError(f"plot failed: {e}")
    Path(args.out).write_bytes(data)
    print(f"wrote {args.method} plot -> {args.out}")
    return EXIT_OK


def cmd_serve(args) -> int:
    from .serve import run_server
    try:
        rules = read_rules(args.rules)
    except (ArtifactError, ValueError) as e:
        raise CliError(f"serve failed: {e}")
    if not 1 <= args.port <= 65535:
        raise CliError(f"port {args.port} outside [1, 65535]")
    try:
        run_server(rules, host=args.host, port=args.port, ui_dir=args.ui)
    except OSError as e:
        raise CliError(f"cannot bind port {args.port}: {e}", code=EXIT_PORT_BUSY)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="rulemine",
        description="Frequent-pattern mining pipeline over inspectable artifacts")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("convert", help="CSV table -> transactions artifact")
    c.add_argument("csv")
    c.add_argument("-o", "--out", required=True)
    c.add_argument("--specs", help="JSON file mapping column name to kind/binning")
    c.set_defaults(fn=cmd_convert)

    c = sub.add_parser("mine", help="transactions artifact -> rules/itemsets artifact")
    c.add_argument("transactions")
    c.add_argument("-o", "--out", required=True)
    c.add_argument("--support", type=float, default=0.1)
    c.add_argument("--confidence", type=float, default=0.8)
    c.add_argument("--minlen", type=int, default=1)
    c.add_argument("--maxlen", type=int, default=10)
    c.add_argument("--target", choices=["rules", "frequent-itemsets"],
                   default="rules")
    c.set_defaults(fn=cmd_mine)

    c = sub.add_parser("filter", help="keep rules matching an expression")
    c.add_argument("rules")
    c.add_argument("-o", "--out", required=True)
    c.add_argument("--where", required=True,
                   help="e.g. \"confidence >= 0.9 and rhs~'type='\"")
    c.set_defaults(fn=cmd_filter)

    c = sub.add_parser("inspect", help="print rules as a table")
    c.add_argument("rules")
    c.add_argument("--sort", help="quality column to sort by")
    c.add_argument("--asc", action="store_true", help="ascending instead of descending")
    c.add_argument("--top", type=int)
    c.add_argument("--format", choices=["table", "json"], default="table")
    c.set_defaults(fn=cmd_inspect)

    c = sub.add_parser("plot", help="write a visualization artifact")
    c.add_argument("rules")
    c.add_argument("-o", "--out", required=True)
    c.add_argument("--method", choices=["scatter", "grouped", "graph"],
                   required=True)
    c.add_argument("--groups", type=int, default=20, help="group count (grouped)")
    c.add_argument("--width", type=int, default=640)
    c.add_argument("--height", type=int, default=480)
    c.add_argument("--max-rules", type=int, default=1000,
                   help="graph size cap (graph)")
    c.set_defaults(fn=cmd_plot)

    c = sub.add_parser("serve", help="serve a rules artifact over HTTP JSON")
    c.add_argument("rules")
    c.add_argument("--host", default="127.0.0.1")
    c.add_argument("--port", type=int, default=8432)
    c.add_argument("--ui", help="directory of static explorer files to serve at /")
    c.set_defaults(fn=cmd_serve)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except CliError as e:
        print(f"rulemine: {e}", file=sys.stderr)
        return e.code
    except KeyboardInterrupt:
        return 130


if __name__ == "__main__":
    sys.exit(main())
