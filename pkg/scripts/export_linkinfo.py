#!/usr/bin/env python3
"""Export LinkInfo rows to the ``name,components,pd,alternating,grid`` CSV.

The LinkInfo table ships with the ``database_knotinfo`` package
(``csv_data/linkinfo_data_complete.csv``, pipe separated).  Grids come from
the arc notation column; every grid is checked against the PD code on
component count, Conway polynomial and signature before it is written.

    python scripts/export_linkinfo.py --out src/sqplink/data/linkinfo_table1.csv
    python scripts/export_linkinfo.py --all --source linkinfo_data_complete.csv --out all.csv
"""

from __future__ import annotations

import argparse
import ast
import csv
import sys
from pathlib import Path

from sqplink.database import HEADER, load_fixture, same_classical_invariants
from sqplink.diagram import LinkDiagram
from sqplink.grid import GridDiagram, grid_from_arc_notation, grid_to_diagram

# rows whose arc notation in the source is not a valid grid
FALLBACK_GRIDS = {
    "L2a1{0}": GridDiagram((0, 1, 2, 3), (2, 3, 0, 1)),
    "L2a1{1}": GridDiagram((2, 1, 0, 3), (0, 3, 2, 1)),
}


def _braces(text: str):
    return ast.literal_eval(text.replace("{", "[").replace("}", "]"))


def default_source() -> Path:
    try:
        import database_knotinfo
    except ImportError:
        sys.exit("database_knotinfo is not installed; pass --source")
    return Path(database_knotinfo.__file__).parent / "csv_data" / "linkinfo_data_complete.csv"


def read_linkinfo(path: Path) -> dict[str, dict]:
    csv.field_size_limit(1 << 30)
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh, delimiter="|"))
    # the first data line repeats the column titles
    return {r["name"]: r for r in rows if r["name"] != "Name"}


def export_row(r: dict) -> list[str]:
    name = r["name"]
    d = LinkDiagram(tuple(tuple(c) for c in _braces(r["pd_notation_vector"])), name=name)
    if d.n != int(r["components"]):
        raise ValueError(f"{name}: component count mismatch")
    grid = None
    try:
        g = grid_from_arc_notation(_braces(r["arc_notation"]))
    except Exception:
        g = FALLBACK_GRIDS.get(name)
    if g is not None and same_classical_invariants(grid_to_diagram(g), d):
        grid = str(g)
    else:
        print(f"warning: no verified grid for {name}", file=sys.stderr)
    return [name, str(d.n), d.to_pd(), "true" if d.is_alternating() else "false", grid or ""]


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--source", type=Path, help="linkinfo_data_complete.csv")
    ap.add_argument("--out", type=Path, required=True)
    ap.add_argument("--all", action="store_true", help="export every row, not only the table rows")
    args = ap.parse_args(argv)
    info = read_linkinfo(args.source or default_source())
    names = list(info) if args.all else [f.name for f in load_fixture()]
    with open(args.out, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, quoting=csv.QUOTE_MINIMAL)
        w.writerow(HEADER)
        for name in names:
            if name not in info:
                print(f"warning: {name} not in LinkInfo", file=sys.stderr)
                continue
            w.writerow(export_row(info[name]))
    return 0


if __name__ == "__main__":
    sys.exit(main())
