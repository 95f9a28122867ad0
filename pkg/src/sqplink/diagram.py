"""Oriented link diagrams stored as planar diagram (PD) codes.

Each crossing is a 4-tuple of edge labels listed counterclockwise, starting
from the incoming under-strand.  Position 0 is therefore always incoming and
position 2 outgoing; the over-strand runs either 1 -> 3 or 3 -> 1, which is
recovered by propagating edge orientations around the components.

Components without crossings cannot be written in a PD code, so a diagram
also records a count of free (crossing-free) loops.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property


class DiagramError(ValueError):
    """Raised for malformed or inconsistent link presentations."""


_PD_RE = re.compile(r"^PD\s*[\[(](.*)[\])]$", re.S)
_X_RE = re.compile(r"X\s*[\[(]\s*([^\])]*)[\])]")


@dataclass(frozen=True, eq=False)
class LinkDiagram:
    crossings: tuple[tuple[int, int, int, int], ...]
    free_loops: int = 0
    name: str | None = field(default=None, compare=False)
    # over_in values to use where orientation cannot be propagated
    hint: tuple[int, ...] | None = field(default=None, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(tuple(int(a) for a in c) for c in self.crossings))
        if self.free_loops < 0:
            raise DiagramError("negative number of free loops")
        if not self.crossings and self.free_loops == 0:
            raise DiagramError("empty diagram")
        for c in self.crossings:
            if len(c) != 4:
                raise DiagramError(f"crossing {c} does not have 4 entries")
        counts: dict[int, int] = {}
        for c in self.crossings:
            for a in c:
                counts[a] = counts.get(a, 0) + 1
        bad = sorted(a for a, k in counts.items() if k != 2)
        if bad:
            raise DiagramError(f"arc labels {bad} do not appear exactly twice")
        # forces orientation propagation so inconsistent codes fail early
        self.over_in

    def _key(self):
        return (self.crossings, self.free_loops, self.over_in)

    def __eq__(self, other):
        if not isinstance(other, LinkDiagram):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    # -- edge incidence -----------------------------------------------------

    @cached_property
    def _ends(self) -> dict[int, list[tuple[int, int]]]:
        ends: dict[int, list[tuple[int, int]]] = {}
        for i, c in enumerate(self.crossings):
            for p, a in enumerate(c):
                ends.setdefault(a, []).append((i, p))
        return ends

    def other_end(self, i: int, p: int) -> tuple[int, int]:
        """The (crossing, position) at the other end of the edge at (i, p)."""
        e0, e1 = self._ends[self.crossings[i][p]]
        return e1 if e0 == (i, p) else e0

    @cached_property
    def over_in(self) -> tuple[int, ...]:
        """Position (1 or 3) of the incoming over-strand at each crossing."""
        nc = len(self.crossings)
        result: list[int | None] = [None] * nc
        # incoming[(i, p)] is True when the edge enters crossing i at p
        incoming: dict[tuple[int, int], bool] = {}
        stack: list[tuple[int, int]] = []

        def mark(i, p, value):
            key = (i, p)
            if key in incoming:
                if incoming[key] != value:
                    raise DiagramError(f"inconsistent orientation at crossing {i}")
                return
            incoming[key] = value
            stack.append(key)

        def propagate():
            while stack:
                i, p = stack.pop()
                mark(*self.other_end(i, p), not incoming[(i, p)])
                if p in (1, 3):
                    q = 4 - p
                    mark(i, q, not incoming[(i, p)])
                    result[i] = p if incoming[(i, p)] else q

        for i in range(nc):
            mark(i, 0, True)
            mark(i, 2, False)
        propagate()
        for i in range(nc):
            if result[i] is None:
                # a component that is never an under-strand; use the hint or
                # the usual labelling habit that the over-strand runs b -> b+1
                if self.hint is not None:
                    mark(i, self.hint[i], True)
                else:
                    _, b, _, d = self.crossings[i]
                    mark(i, 3 if b == d + 1 else 1, True)
                propagate()
        return tuple(result)  # type: ignore[arg-type]

    def is_incoming(self, i: int, p: int) -> bool:
        return p == 0 or p == self.over_in[i]

    @cached_property
    def signs(self) -> tuple[int, ...]:
        """Crossing signs; +1 when the over-strand runs from position 3 to 1."""
        return tuple(1 if o == 3 else -1 for o in self.over_in)

    def writhe(self) -> int:
        return sum(self.signs)

    def next_position(self, i: int, p: int) -> tuple[int, int]:
        """Follow the strand entering crossing i at position p to the next
        crossing; returns the (crossing, position) where it arrives."""
        return self.other_end(i, (p + 2) % 4)

    # -- components ---------------------------------------------------------

    @cached_property
    def strand_components(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Components as cyclic sequences of (crossing, incoming position)."""
        seen = set()
        comps = []
        for i in range(len(self.crossings)):
            for p in (0, self.over_in[i]):
                if (i, p) in seen:
                    continue
                comp = []
                cur = (i, p)
                while cur not in seen:
                    seen.add(cur)
                    comp.append(cur)
                    cur = self.next_position(*cur)
                comps.append(tuple(comp))
        return tuple(comps)

    @property
    def n(self) -> int:
        return len(self.strand_components) + self.free_loops

    def component_edges(self) -> list[list[int]]:
        """Edge labels of each crossed component in traversal order."""
        return [[self.crossings[i][p] for i, p in comp] for comp in self.strand_components]

    def component_of_edge(self) -> dict[int, int]:
        out = {}
        for k, edges in enumerate(self.component_edges()):
            for e in edges:
                out[e] = k
        return out

    def linking_number(self, j: int, k: int) -> int:
        """Linking number of crossed components j and k (j != k)."""
        comp = self.component_of_edge()
        total = 0
        for i, c in enumerate(self.crossings):
            pair = {comp[c[0]], comp[c[self.over_in[i]]]}
            if pair == {j, k}:
                total += self.signs[i]
        return total // 2

    # -- faces --------------------------------------------------------------

    @cached_property
    def faces(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Faces of the diagram as cycles of corners.

        Corner (i, k) is the wedge at crossing i between positions k and
        k + 1 (counterclockwise).  Faces are traversed keeping the face on
        the right.
        """
        seen = set()
        faces = []
        for i in range(len(self.crossings)):
            for k in range(4):
                if (i, k) in seen:
                    continue
                face = []
                cur = (i, k)
                while cur not in seen:
                    seen.add(cur)
                    face.append(cur)
                    j, m = self.other_end(cur[0], (cur[1] + 1) % 4)
                    cur = (j, m)
                faces.append(tuple(face))
        return tuple(faces)

    def is_planar(self) -> bool:
        """Euler characteristic check for each connected piece of the diagram."""
        if not self.crossings:
            return True
        nv = len(self.crossings)
        return nv - 2 * nv + len(self.faces) == 2 * len(self.connected_pieces())

    def connected_pieces(self) -> list[set[int]]:
        parent = list(range(len(self.crossings)))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for ends in self._ends.values():
            (i, _), (j, _) = ends
            parent[find(i)] = find(j)
        groups: dict[int, set[int]] = {}
        for i in range(len(self.crossings)):
            groups.setdefault(find(i), set()).add(i)
        return list(groups.values())

    # -- predicates ---------------------------------------------------------

    def is_alternating(self) -> bool:
        """True when every edge joins an over-passage to an under-passage."""
        for a, ((i, p), (j, q)) in self._ends.items():
            if (p in (0, 2)) == (q in (0, 2)):
                return False
        return True

    def is_split_diagram(self) -> bool:
        """Diagram-level splitness: the projection is disconnected."""
        pieces = len(self.connected_pieces()) if self.crossings else 0
        return pieces + self.free_loops > 1

    def o_count(self) -> int:
        """Number of crossing-free components drawn apart from the rest."""
        return self.free_loops

    def mirror(self) -> "LinkDiagram":
        """Diagram of the mirror image: every crossing switched."""
        new = []
        for i, (a, b, c, d) in enumerate(self.crossings):
            if self.over_in[i] == 3:
                new.append((d, a, b, c))
            else:
                new.append((b, c, d, a))
        name = f"{self.name}*" if self.name else None
        return LinkDiagram(tuple(new), self.free_loops, name, tuple(4 - o for o in self.over_in))

    def with_free_loops(self, k: int) -> "LinkDiagram":
        return LinkDiagram(self.crossings, k, self.name, self.hint)

    def relabelled(self) -> "LinkDiagram":
        """Same diagram with edges renumbered 1..2c along the components."""
        mapping = {}
        for edges in self.component_edges():
            for e in edges:
                mapping.setdefault(e, len(mapping) + 1)
        new = tuple(tuple(mapping[a] for a in c) for c in self.crossings)
        return LinkDiagram(new, self.free_loops, self.name, self.over_in)

    def to_pd(self) -> str:
        body = ", ".join("X(%d,%d,%d,%d)" % c for c in self.crossings)
        return f"PD[{body}]"

    def __str__(self):
        extra = f" + {self.free_loops} free loop(s)" if self.free_loops else ""
        return self.to_pd() + extra


def parse_pd(text: str, name: str | None = None) -> LinkDiagram:
    """Parse ``PD[X(a,b,c,d), ...]``; square or round brackets are accepted.

    ``PD[]`` is the crossing-free unknot.
    """
    m = _PD_RE.match(text.strip())
    if not m:
        raise DiagramError(f"not a PD code: {text!r}")
    body = m.group(1).strip()
    crossings = []
    for xm in _X_RE.finditer(body):
        parts = [s.strip() for s in xm.group(1).split(",")]
        try:
            vals = tuple(int(s) for s in parts)
        except ValueError:
            raise DiagramError(f"non-integer arc label in {xm.group(0)!r}") from None
        if len(vals) != 4:
            raise DiagramError(f"crossing {xm.group(0)!r} does not have 4 labels")
        if min(vals) <= 0:
            raise DiagramError("arc labels must be positive integers")
        crossings.append(vals)
    leftover = _X_RE.sub("", body).replace(",", "").strip()
    if leftover:
        raise DiagramError(f"unexpected text in PD code: {leftover!r}")
    return LinkDiagram(tuple(crossings), 0 if crossings else 1, name)
