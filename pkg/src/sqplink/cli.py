"""Command line interface.

Inputs may be a PD code (``PD[X(1,4,2,3), ...]``), a braid word
(``"3: 1 -2 1 -2"``), a grid (``"X=1,0;O=0,1"``) or the name of a row in the
bundled database (``L6n1{0,1}``).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .braid import braid_closure, parse_braid
from .database import DatabaseError, bundled_database, ingest_csv, load_fixture, reproduce_table
from .detector import ConsistencyAlarm, classify
from .diagram import DiagramError, LinkDiagram, parse_pd
from .grid import GridDiagram, grid_to_diagram, parse_grid
from .gridfloer import DEFAULT_GRID_CAP, GridCapExceeded, grid_homology

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class InputError(ValueError):
    pass


def resolve_input(text: str, grid_text: str | None = None) -> tuple[LinkDiagram, GridDiagram | None]:
    """Diagram plus an optional grid for the same link."""
    s = text.strip()
    grid = parse_grid(grid_text) if grid_text else None
    if s.upper().startswith("PD"):
        return parse_pd(s), grid
    if s.upper().startswith("X"):
        g = parse_grid(s)
        return grid_to_diagram(g), grid or g
    if ":" in s and s.split(":")[0].strip().isdigit():
        return braid_closure(parse_braid(s)), grid
    for row in bundled_database():
        if row.name == s:
            if grid is None and row.grid and not row.alternating:
                grid = row.grid_diagram
            return row.diagram, grid
    raise InputError(f"cannot interpret input {text!r} as a PD code, braid, grid or known name")


def _report(args):
    d, grid = resolve_input(args.input, args.grid)
    if args.name:
        d = LinkDiagram(d.crossings, d.free_loops, args.name, d.hint)
    elif d.name is None:
        d = LinkDiagram(d.crossings, d.free_loops, args.input.strip(), d.hint)
    oracle = None
    if grid is not None and (args.oracle or not d.is_alternating()):
        oracle = grid_homology(grid, args.grid_cap, args.threads)
    return classify(d, oracle)


def cmd_invariants(args) -> int:
    rep = _report(args)
    print(rep.to_json() if args.format == "json" else rep.to_text())
    return EXIT_OK


def cmd_detect(args) -> int:
    rep = _report(args)
    if args.format == "json":
        print(json.dumps({"name": rep.name, "verdict": rep.verdict, "sqp": rep.sqp,
                          "sqp_L": rep.sqp_L, "sqp_mirror": rep.sqp_mirror,
                          "fibered": rep.fibered, "SL": rep.SL, "method": rep.method.value}))
    else:
        print(rep.verdict)
    return EXIT_OK


def cmd_grid_hfl(args) -> int:
    s = args.input.strip()
    if s.upper().startswith("X"):
        g = parse_grid(s)
    else:
        _, g = resolve_input(s, args.grid)
        if g is None:
            raise InputError("grid-hfl needs a grid (X=...;O=...) or a database row with one")
    table = grid_homology(g, args.grid_cap, args.threads)
    if args.format == "json":
        print(json.dumps(table.to_dict()))
    else:
        print(f"grid N={table.N}, components={table.n}")
        print(table.rank_table())
        print(table.summary())
    return EXIT_OK


def cmd_table(args) -> int:
    if args.db:
        errors = []
        db = ingest_csv(args.db, errors)
        for e in errors:
            print(f"warning: {e}", file=sys.stderr)
    else:
        db = bundled_database()
    fixture = load_fixture(args.fixture)
    report = reproduce_table(db, fixture, args.grid_cap, args.threads)
    print(report.to_json() if args.format == "json" else report.to_text())
    return EXIT_OK if report.ok else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--grid-cap", type=int, default=DEFAULT_GRID_CAP, metavar="N",
                        help="largest grid the oracle accepts (default %(default)s)")
    common.add_argument("--threads", type=int, default=1, metavar="K")

    link = argparse.ArgumentParser(add_help=False)
    link.add_argument("input", help="PD code, braid word, grid or database name")
    link.add_argument("--grid", help="grid of the same link, for the Floer oracle")
    link.add_argument("--oracle", action="store_true",
                      help="run the grid oracle even for alternating diagrams (cross-check)")
    link.add_argument("--name", help="name to show in the report")

    ap = argparse.ArgumentParser(prog="sqplink", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    p = sub.add_parser("invariants", parents=[common, link], help="full invariant report")
    p.set_defaults(func=cmd_invariants)
    p = sub.add_parser("detect", parents=[common, link], help="Y (SL) / N / unknown verdict")
    p.set_defaults(func=cmd_detect)
    p = sub.add_parser("grid-hfl", parents=[common], help="grid homology rank table")
    p.add_argument("input", help="grid X=...;O=... or a database name")
    p.add_argument("--grid", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_grid_hfl)
    p = sub.add_parser("table", parents=[common], help="reproduce the fibered-link table")
    p.add_argument("--db", help="database CSV (default: bundled export)")
    p.add_argument("--fixture", help="table fixture TSV (default: bundled)")
    p.set_defaults(func=cmd_table)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.threads < 1 or args.grid_cap < 2:
        ap.error("--threads must be >= 1 and --grid-cap >= 2")
    try:
        return args.func(args)
    except ConsistencyAlarm as exc:
        print(f"consistency alarm: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (InputError, DiagramError, DatabaseError, GridCapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
