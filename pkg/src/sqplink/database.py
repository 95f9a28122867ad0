"""Link database ingestion and batch reproduction of the fibered-link table."""

from __future__ import annotations

import csv
import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .detector import ConsistencyAlarm, InvariantReport, classify
from .diagram import DiagramError, LinkDiagram, parse_pd
from .grid import GridDiagram, grid_to_diagram, parse_grid
from .gridfloer import DEFAULT_GRID_CAP, GridCapExceeded, grid_homology
from .invariants import conway_polynomial, signature
from .seifert import seifert_algorithm

log = logging.getLogger(__name__)

HEADER = ["name", "components", "pd", "alternating", "grid"]


class DatabaseError(OSError):
    pass


@dataclass(frozen=True)
class DatabaseRow:
    name: str
    components: int
    pd: str
    alternating: bool
    grid: str | None = None

    @property
    def diagram(self) -> LinkDiagram:
        return parse_pd(self.pd, self.name)

    @property
    def grid_diagram(self) -> GridDiagram | None:
        return parse_grid(self.grid) if self.grid else None


@dataclass(frozen=True)
class RowError:
    line: int
    name: str | None
    message: str

    def __str__(self):
        return f"line {self.line} ({self.name or '?'}): {self.message}"


def _parse_bool(text: str) -> bool:
    t = text.strip().lower()
    if t in ("true", "y", "yes", "1"):
        return True
    if t in ("false", "n", "no", "0"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def ingest_csv(path, errors: list[RowError] | None = None) -> list[DatabaseRow]:
    """Read a ``name,components,pd,alternating,grid`` CSV.

    Bad rows are skipped; each is logged and, when ``errors`` is given,
    appended to it with its line number.
    """
    try:
        fh = open(path, newline="", encoding="utf-8")
    except OSError as exc:
        raise DatabaseError(f"cannot read {path}: {exc}") from exc
    rows: list[DatabaseRow] = []
    seen: set[str] = set()
    with fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise DatabaseError(f"{path}: empty file")
        header = [h.strip() for h in header]
        if header != HEADER and header != HEADER[:4]:
            raise DatabaseError(f"{path}: header {header} does not match {HEADER}")
        for rec in reader:
            line = reader.line_num
            if not rec or all(not x.strip() for x in rec):
                continue
            name = rec[0].strip() if rec else None
            try:
                if len(rec) not in (4, 5):
                    raise ValueError(f"expected 4 or 5 fields, got {len(rec)}")
                grid = rec[4].strip() if len(rec) == 5 and rec[4].strip() else None
                row = DatabaseRow(name, int(rec[1]), rec[2].strip(), _parse_bool(rec[3]), grid)
                if name in seen:
                    raise ValueError("duplicate name")
                d = row.diagram
                if d.n != row.components:
                    raise ValueError(f"components {row.components} but the PD code has {d.n}")
                if d.is_alternating() != row.alternating:
                    raise ValueError("alternating flag disagrees with the PD code")
                if grid:
                    g = row.grid_diagram
                    if g.n != row.components:
                        raise ValueError(f"grid has {g.n} components")
            except (ValueError, DiagramError) as exc:
                err = RowError(line, name, str(exc))
                log.warning("skipping %s", err)
                if errors is not None:
                    errors.append(err)
                continue
            seen.add(name)
            rows.append(row)
    return rows


@dataclass(frozen=True)
class FixtureRow:
    name: str
    verdict: str
    SL: int | None

    @property
    def expected(self) -> str:
        return f"Y ({self.SL})" if self.verdict == "Y" else "N"


def load_fixture(path=None) -> list[FixtureRow]:
    """Table rows as ``name<TAB>Y|N<TAB>SL``; the bundled table by default."""
    if path is None:
        text = resources.files("sqplink.data").joinpath("table1.tsv").read_text(encoding="utf-8")
    else:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise DatabaseError(f"cannot read {path}: {exc}") from exc
    out = []
    for k, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) < 2 or parts[1] not in ("Y", "N"):
            raise DatabaseError(f"fixture line {k} is malformed: {line!r}")
        sl = parts[2].strip() if len(parts) > 2 else ""
        if parts[1] == "Y" and not sl:
            raise DatabaseError(f"fixture line {k}: Y row without SL")
        out.append(FixtureRow(parts[0], parts[1], int(sl) if sl else None))
    return out


def bundled_database() -> list[DatabaseRow]:
    with resources.as_file(resources.files("sqplink.data").joinpath("linkinfo_table1.csv")) as p:
        return ingest_csv(p)


@dataclass
class TableEntry:
    name: str
    expected: str
    got: str
    status: str
    method: str | None = None
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "expected": self.expected, "got": self.got,
                "status": self.status, "method": self.method, "detail": self.detail}


@dataclass
class TableReport:
    entries: list[TableEntry] = field(default_factory=list)

    def counts(self) -> dict[str, int]:
        out = {"MATCH": 0, "MISMATCH": 0, "UNRESOLVED": 0}
        for e in self.entries:
            out[e.status] += 1
        return out

    @property
    def ok(self) -> bool:
        return self.counts()["MISMATCH"] == 0

    def to_text(self) -> str:
        width = max([len(e.name) for e in self.entries] + [4])
        lines = [f"{e.name.ljust(width)}  {e.status:<10}  expected {e.expected:<6}  got {e.got}"
                 + (f"  [{e.detail}]" if e.detail else "") for e in self.entries]
        c = self.counts()
        lines.append(f"MATCH={c['MATCH']} MISMATCH={c['MISMATCH']} UNRESOLVED={c['UNRESOLVED']}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {"rows": [e.to_dict() for e in self.entries], "counts": self.counts()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def same_classical_invariants(a: LinkDiagram, b: LinkDiagram) -> bool:
    """Equal component count, Conway polynomial and signature (mirror-sensitive)."""
    if a.n != b.n:
        return False
    if a.is_split_diagram() or b.is_split_diagram():
        return a.is_split_diagram() == b.is_split_diagram()
    sa, sb = seifert_algorithm(a), seifert_algorithm(b)
    return conway_polynomial(sa) == conway_polynomial(sb) and signature(sa) == signature(sb)


def classify_row(row: DatabaseRow, grid_cap: int = DEFAULT_GRID_CAP,
                 threads: int = 1, use_grid: bool | None = None) -> InvariantReport:
    """Classify a database row; the grid oracle is used for non-alternating rows."""
    d = row.diagram
    oracle = None
    if use_grid is None:
        use_grid = not d.is_alternating()
    if use_grid and row.grid:
        g = row.grid_diagram
        if not same_classical_invariants(grid_to_diagram(g), d):
            raise DiagramError(f"{row.name}: grid and PD code present different links")
        oracle = grid_homology(g, grid_cap, threads)
    return classify(d, oracle)


def _reproduce_one(fx: FixtureRow, row: DatabaseRow | None, grid_cap: int) -> TableEntry:
    if row is None:
        return TableEntry(fx.name, fx.expected, "-", "UNRESOLVED", detail="no database row")
    try:
        rep = classify_row(row, grid_cap)
    except GridCapExceeded as exc:
        return TableEntry(fx.name, fx.expected, "unknown", "UNRESOLVED", detail=str(exc))
    except ConsistencyAlarm as exc:
        return TableEntry(fx.name, fx.expected, "alarm", "MISMATCH", detail=str(exc))
    got = rep.verdict
    method = rep.method.value
    if got == "unknown":
        detail = "; ".join(rep.notes) or "no certificate"
        return TableEntry(fx.name, fx.expected, got, "UNRESOLVED", method, detail)
    status = "MATCH" if got == fx.expected else "MISMATCH"
    return TableEntry(fx.name, fx.expected, got, status, method)


def reproduce_table(db: list[DatabaseRow], fixture: list[FixtureRow],
                    grid_cap: int = DEFAULT_GRID_CAP, threads: int = 1) -> TableReport:
    """Classify every fixture link and compare with the table; output keeps fixture order."""
    by_name = {r.name: r for r in db}
    jobs = [(fx, by_name.get(fx.name)) for fx in fixture]
    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            entries = list(ex.map(lambda j: _reproduce_one(j[0], j[1], grid_cap), jobs))
    else:
        entries = [_reproduce_one(fx, row, grid_cap) for fx, row in jobs]
    return TableReport(entries)
