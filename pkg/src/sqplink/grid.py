"""Toroidal grid diagrams.

``X[r]`` and ``O[r]`` are the columns of the X and O markings in row ``r``;
rows are numbered bottom to top and columns left to right, both from 0.
A marking in row r and column c sits at the point (c + 1/2, r + 1/2).

The link is drawn by joining the two markings of each row horizontally and
the two markings of each column vertically, with vertical segments passing
over horizontal ones.  Components are oriented from O to X along rows and
from X to O along columns.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property

from .diagram import DiagramError, LinkDiagram

_GRID_RE = re.compile(r"^\s*X\s*=\s*([\d,\s]*?)\s*;\s*O\s*=\s*([\d,\s]*?)\s*;?\s*$", re.I)


@dataclass(frozen=True)
class GridDiagram:
    X: tuple[int, ...]
    O: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "X", tuple(int(v) for v in self.X))
        object.__setattr__(self, "O", tuple(int(v) for v in self.O))
        N = len(self.X)
        if len(self.O) != N:
            raise DiagramError("X and O have different lengths")
        if N < 2:
            raise DiagramError("grid size must be at least 2")
        for name, perm in (("X", self.X), ("O", self.O)):
            if sorted(perm) != list(range(N)):
                raise DiagramError(f"{name} is not a permutation of 0..{N - 1}")
        for r in range(N):
            if self.X[r] == self.O[r]:
                raise DiagramError(f"X and O share a square in row {r}")

    @property
    def N(self) -> int:
        return len(self.X)

    @cached_property
    def X_row(self) -> tuple[int, ...]:
        """Row of the X marking in each column."""
        inv = [0] * self.N
        for r, c in enumerate(self.X):
            inv[c] = r
        return tuple(inv)

    @cached_property
    def O_row(self) -> tuple[int, ...]:
        inv = [0] * self.N
        for r, c in enumerate(self.O):
            inv[c] = r
        return tuple(inv)

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        """Rows of each component, in traversal order starting from its lowest row."""
        seen = set()
        comps = []
        for start in range(self.N):
            if start in seen:
                continue
            rows = []
            r = start
            while r not in seen:
                seen.add(r)
                rows.append(r)
                # along row r from O to X, then down/up column X[r] to its O
                r = self.O_row[self.X[r]]
            comps.append(tuple(rows))
        return tuple(comps)

    @property
    def n(self) -> int:
        return len(self.components)

    def component_of_row(self) -> list[int]:
        out = [0] * self.N
        for k, rows in enumerate(self.components):
            for r in rows:
                out[r] = k
        return out

    def mirror(self) -> "GridDiagram":
        """Reflect the columns; the result presents the mirror link."""
        N = self.N
        return GridDiagram(tuple(N - 1 - c for c in self.X), tuple(N - 1 - c for c in self.O))

    def reverse_component(self, k: int) -> "GridDiagram":
        """Swap X and O on component k, reversing its orientation."""
        X, O = list(self.X), list(self.O)
        for r in self.components[k]:
            X[r], O[r] = O[r], X[r]
        return GridDiagram(tuple(X), tuple(O))

    def stabilize(self, row: int | None = None) -> "GridDiagram":
        """Stabilization at the X marking of ``row`` (default: row 0).

        The X at (c, r) is replaced by a 2x2 block in columns c, c+1 and rows
        r, r+1 holding X at (c+1, r), X at (c, r+1) and O at (c+1, r+1).
        """
        r = 0 if row is None else row
        if not 0 <= r < self.N:
            raise DiagramError(f"row {r} is outside a grid of size {self.N}")
        c = self.X[r]
        N = self.N

        def col(v):
            return v + 1 if v > c else v

        X, O = [], []
        for k in range(N):
            X.append(col(self.X[k]))
            O.append(col(self.O[k]))
            if k == r:
                X[-1] = c + 1
                X.append(c)
                O.append(c + 1)
        return GridDiagram(tuple(X), tuple(O))

    def __str__(self):
        return "X=" + ",".join(map(str, self.X)) + ";O=" + ",".join(map(str, self.O))


def parse_grid(text: str) -> GridDiagram:
    """Parse ``X=1,0;O=0,1`` (whitespace-insensitive)."""
    m = _GRID_RE.match(text)
    if not m:
        raise DiagramError(f"not a grid diagram: {text!r}")
    try:
        X = tuple(int(s) for s in m.group(1).replace(" ", "").split(",") if s)
        O = tuple(int(s) for s in m.group(2).replace(" ", "").split(",") if s)
    except ValueError:
        raise DiagramError(f"non-integer entry in grid {text!r}") from None
    return GridDiagram(X, O)


def grid_from_arc_notation(pairs) -> GridDiagram:
    """Grid from a LinkInfo-style arc presentation.

    ``pairs[i]`` holds the 1-based columns of the two markings in row i; the
    first entry is taken as the X marking.  Reading the rows bottom to top
    matches the database signatures under the drawing convention above.
    """
    N = len(pairs)
    X = [0] * N
    O = [0] * N
    for i, (a, b) in enumerate(pairs):
        X[i] = int(a) - 1
        O[i] = int(b) - 1
    return GridDiagram(tuple(X), tuple(O))


def grid_to_diagram(g: GridDiagram) -> LinkDiagram:
    """PD code of the link drawn from the grid (vertical strands over)."""
    N = g.N
    # segments in traversal order; each is ('h', row, c_from, c_to) or ('v', col, r_from, r_to)
    comp_segments = []
    for rows in g.components:
        segs = []
        for r in rows:
            segs.append(("h", r, g.O[r], g.X[r]))
            c = g.X[r]
            segs.append(("v", c, r, g.O_row[c]))
        comp_segments.append(segs)

    def between(v, a, b):
        return min(a, b) < v < max(a, b)

    horizontals = [(r, g.O[r], g.X[r]) for r in range(N)]
    verticals = [(c, g.X_row[c], g.O_row[c]) for c in range(N)]
    crossing_at = {}
    for r, ca, cb in horizontals:
        for c, ra, rb in verticals:
            if between(c, ca, cb) and between(r, ra, rb):
                crossing_at[(c, r)] = len(crossing_at)
    free = 0
    # walk every component, cutting it into edges at each crossing passage
    passages = {}  # crossing -> {'h': (in_edge, out_edge, dir), 'v': ...}
    label = 0
    for segs in comp_segments:
        events = []
        for kind, fixed, a, b in segs:
            step = 1 if b > a else -1
            for t in range(a + step, b, step):
                key = (fixed, t) if kind == "v" else (t, fixed)
                if key in crossing_at:
                    events.append((crossing_at[key], kind, step))
        if not events:
            free += 1
            continue
        # edge first + j runs from event j to event j + 1 (cyclically)
        first = label + 1
        m = len(events)
        for idx, (k, kind, step) in enumerate(events):
            passages.setdefault(k, {})[kind] = (first + (idx - 1) % m, first + idx, step)
        label += m
    crossings = []
    hint = []
    for k in range(len(crossing_at)):
        h_in, h_out, h_step = passages[k]["h"]
        v_in, v_out, v_step = passages[k]["v"]
        # under strand is horizontal with direction (h_step, 0); the position
        # counterclockwise after the incoming end lies in direction rot90(-u)
        # = (0, -h_step); the over strand leaves in direction (0, v_step)
        if v_step == -h_step:
            crossings.append((h_in, v_out, h_out, v_in))
            hint.append(3)
        else:
            crossings.append((h_in, v_in, h_out, v_out))
            hint.append(1)
    if not crossings:
        return LinkDiagram((), free)
    return LinkDiagram(tuple(crossings), free, hint=tuple(hint))
