"""Seifert's algorithm and the Seifert matrix of the canonical surface.

The surface is the usual one: a disk for every Seifert circle (nested disks
stacked with inner ones on top) and a half-twisted band at every crossing.
A basis of first homology comes from the fundamental cycles of the Seifert
graph.  Each cycle is realised by a curve running in a thin collar just
inside its Seifert circles and crossing the bands it uses.

Linking numbers lk(a, b^+) are counted from projected crossings.  Two such
curves can only cross in projection inside a small box around a crossing of
the diagram, so the count is a sum of box-local contributions.  Each box is
modelled explicitly in 3D: straight collar lanes, a half-twisted band, and,
when one circle is nested around the other, a collar that rotates under its
own edge so the band can climb onto the higher disk.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .diagram import DiagramError, LinkDiagram

# collar lane spacing, push-off distance, twist-zone extent
_DELTA = 0.05
_ETA = 0.01
_ZONE = 0.4
_SAMPLES = 24


@dataclass(frozen=True)
class SeifertData:
    circles: int
    crossing_count: int
    components: int
    matrix: tuple[tuple[int, ...], ...]

    @property
    def euler(self) -> int:
        return self.circles - self.crossing_count

    @property
    def genus(self) -> int:
        return (2 - self.euler - self.components) // 2

    @property
    def size(self) -> int:
        return len(self.matrix)

    def array(self) -> np.ndarray:
        return np.array(self.matrix, dtype=np.int64).reshape(self.size, self.size)


# ---------------------------------------------------------------------------
# combinatorics of the smoothing


def _smoothing(d: LinkDiagram, i: int) -> dict[str, tuple[int, int]]:
    """Left and right smoothed arcs at crossing i as (in position, out position).

    "Left" and "right" refer to a frame in which both arcs run upward.
    """
    if d.over_in[i] == 3:
        return {"l": (3, 2), "r": (0, 1)}
    return {"l": (0, 3), "r": (1, 2)}


def seifert_circles(d: LinkDiagram):
    """Return (circles, arc_circle).

    ``circles`` lists each circle as a cyclic sequence of (crossing, side)
    visits in the direction of the orientation; ``arc_circle[(i, side)]`` is
    the circle index of that smoothed arc.
    """
    out_of = {}
    for i in range(len(d.crossings)):
        for side, (pin, pout) in _smoothing(d, i).items():
            out_of[(i, pin)] = (side, pout)
    arc_circle: dict[tuple[int, str], int] = {}
    circles = []
    for i in range(len(d.crossings)):
        for side in ("l", "r"):
            if (i, side) in arc_circle:
                continue
            k = len(circles)
            visits = []
            cur = (i, side)
            while cur not in arc_circle:
                arc_circle[cur] = k
                visits.append(cur)
                ci, cs = cur
                pout = _smoothing(d, ci)[cs][1]
                nj, nq = d.other_end(ci, pout)
                cur = (nj, out_of[(nj, nq)][0])
            circles.append(visits)
    return circles, arc_circle


def _circle_ccw(d: LinkDiagram, circles, arc_circle) -> list[bool]:
    """Rotation sense of each Seifert circle for a fixed choice of outer face."""
    faces = d.faces
    face_of = {}
    for f, corners in enumerate(faces):
        for corner in corners:
            face_of[corner] = f
    outer = max(range(len(faces)), key=lambda f: (len(faces[f]), -f))
    # edge label -> circle, and its left/right faces (seen from the outgoing end)
    edge_info = {}
    for i in range(len(d.crossings)):
        for side, (_, pout) in _smoothing(d, i).items():
            e = d.crossings[i][pout]
            left = face_of[(i, pout)]
            right = face_of[(i, (pout - 1) % 4)]
            edge_info[e] = (arc_circle[(i, side)], left, right)
    result = []
    for k in range(len(circles)):
        parent = list(range(len(faces)))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for circ, left, right in edge_info.values():
            if circ != k:
                parent[find(left)] = find(right)
        lefts = {find(left) for circ, left, _ in edge_info.values() if circ == k}
        rights = {find(right) for circ, _, right in edge_info.values() if circ == k}
        if len(lefts) != 1 or len(rights) != 1 or lefts == rights:
            raise DiagramError("diagram is not planar")
        result.append(find(outer) not in lefts)
    return result


def _fundamental_cycles(num_circles: int, edges: list[tuple[int, int]]):
    """Fundamental cycles of the Seifert graph.

    ``edges[i]`` = (circle of left arc, circle of right arc) of crossing i.
    Each cycle is a list of steps (crossing, from_circle, to_circle).
    """
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(num_circles)}
    for i, (a, b) in enumerate(edges):
        adj[a].append((i, b))
        adj[b].append((i, a))
    parent: dict[int, tuple[int, int] | None] = {0: None}
    depth = {0: 0}
    queue = deque([0])
    tree = set()
    while queue:
        v = queue.popleft()
        for i, w in adj[v]:
            if w not in parent:
                parent[w] = (v, i)
                depth[w] = depth[v] + 1
                tree.add(i)
                queue.append(w)
    if len(parent) != num_circles:
        raise DiagramError("Seifert graph is disconnected; diagram is split")

    def path_to_root(v):
        path = []
        while parent[v] is not None:
            u, i = parent[v]
            path.append((i, v, u))
            v = u
        return path

    cycles = []
    for i, (a, b) in enumerate(edges):
        if i in tree:
            continue
        # a -> b through crossing i, then b back to a through the tree
        pb = path_to_root(b)
        pa = path_to_root(a)
        # trim shared tail
        while pb and pa and pb[-1] == pa[-1]:
            pb.pop()
            pa.pop()
        steps = [(i, a, b)]
        steps += pb  # b up to the meeting vertex
        steps += [(j, u, v) for j, v, u in reversed(pa)]  # down to a
        cycles.append(steps)
    return cycles


# ---------------------------------------------------------------------------
# box geometry


def _theta(y: np.ndarray, twisted: bool) -> np.ndarray:
    if not twisted:
        return np.zeros_like(y)
    th = np.full_like(y, math.pi)
    low = y < -1 + _ZONE
    high = y > 1 - _ZONE
    th[low] = math.pi * (y[low] + 1) / _ZONE
    th[high] = math.pi * (1 - y[high]) / _ZONE
    return th


class _Box:
    """Local model around one crossing, in the frame where both arcs go up."""

    def __init__(self, sign: int, interior: dict[str, int], twisted: dict[str, bool]):
        self.sign = sign
        self.interior = interior
        self.twisted = twisted

    def lane(self, side: str, depth: int, y0: float, y1: float, push: bool):
        y = np.linspace(y0, y1, _SAMPLES)
        th = _theta(y, self.twisted[side])
        io = self.interior[side]
        x0 = -1.0 if side == "l" else 1.0
        x = x0 + io * depth * _DELTA * np.cos(th)
        z = -depth * _DELTA * np.sin(th)
        if push:
            x = x - _ETA * np.sin(th)
            z = z - _ETA * io * np.cos(th)
        return np.column_stack([x, y, z])

    def _middle_lane_x(self, side: str, depth: int) -> float:
        return -1.0 - depth * _DELTA if side == "l" else 1.0 + depth * _DELTA

    def band(self, v: float, forward: bool, push: bool):
        u = np.linspace(-1.0, 1.0, 2 * _SAMPLES + 1)
        phi = -self.sign * math.pi * (u + 1) / 2
        pts = np.column_stack([u, v * np.cos(phi), v * np.sin(phi)])
        if push:
            pts = pts + _ETA * np.column_stack([np.zeros_like(u), -np.sin(phi), np.cos(phi)])
        return pts if forward else pts[::-1]

    def piece(self, kind: str, side: str, depth: int, push: bool) -> np.ndarray:
        if kind == "pass":
            return self.lane(side, depth, -1.0, 1.0, push)
        # band piece entering from ``side`` at the bottom
        other = "r" if side == "l" else "l"
        entry = (0.1 if side == "l" else 0.15) + 0.1 * depth
        exit_y = -entry
        zsign = {"l": 1.0, "r": -1.0}  # collar normals in the untwisted middle
        dz = _ETA if push else 0.0
        first = self.lane(side, depth, -1.0, entry, push)
        x_in = -1.0 if side == "l" else 1.0
        conn_in = np.array([[x_in, entry, zsign[side] * dz]])
        v = entry if side == "l" else -entry
        mid = self.band(v, side == "l", push)
        conn_out = np.array([[self._middle_lane_x(other, depth), exit_y, zsign[other] * dz]])
        last = self.lane(other, depth, exit_y, 1.0, push)
        return np.vstack([first, conn_in, mid, conn_out, last])


@lru_cache(maxsize=None)
def _box_linking(box: tuple[int, int, int], piece_a: tuple[str, str],
                 piece_b: tuple[str, str]) -> int:
    """Crossings in one box where the pushed-off piece b passes over piece a."""
    sign, il, ir = box
    model = _Box(sign, {"l": il, "r": ir}, {"l": il == 1, "r": ir == -1})
    pa = model.piece(*piece_a, 1, False)
    pb = model.piece(*piece_b, 2, True)
    return _over_crossings(pa, pb)


def _over_crossings(under: np.ndarray, over: np.ndarray) -> int:
    """Signed count of crossings where polyline ``over`` passes above ``under``."""
    total = 0
    p = under[:-1, :2]
    r = under[1:, :2] - p
    for k in range(len(over) - 1):
        q = over[k, :2]
        s = over[k + 1, :2] - q
        denom = r[:, 0] * s[1] - r[:, 1] * s[0]
        ok = np.abs(denom) > 1e-15
        if not ok.any():
            continue
        qp = q - p
        t = np.where(ok, (qp[:, 0] * s[1] - qp[:, 1] * s[0]) / np.where(ok, denom, 1), -1)
        w = np.where(ok, (qp[:, 0] * r[:, 1] - qp[:, 1] * r[:, 0]) / np.where(ok, denom, 1), -1)
        hit = ok & (t >= 0) & (t < 1) & (w >= 0) & (w < 1)
        for m in np.nonzero(hit)[0]:
            zu = under[m, 2] + t[m] * (under[m + 1, 2] - under[m, 2])
            zo = over[k, 2] + w[m] * (over[k + 1, 2] - over[k, 2])
            if zo > zu:
                # positive crossing iff cross(over, under) > 0
                total += 1 if s[0] * r[m, 1] - s[1] * r[m, 0] > 0 else -1
    return total


# ---------------------------------------------------------------------------


def seifert_algorithm(d: LinkDiagram) -> SeifertData:
    """Canonical Seifert surface data for a connected diagram."""
    if d.is_split_diagram():
        raise DiagramError("Seifert matrix requested for a split diagram")
    if not d.crossings:
        return SeifertData(1, 0, 1, ())
    circles, arc_circle = seifert_circles(d)
    ccw = _circle_ccw(d, circles, arc_circle)
    nc = len(d.crossings)
    boxes = []
    for i in range(nc):
        cl, cr = arc_circle[(i, "l")], arc_circle[(i, "r")]
        # interior side of each arc: -1 left, +1 right
        interior = {"l": -1 if ccw[cl] else 1, "r": -1 if ccw[cr] else 1}
        if interior["l"] == 1 and interior["r"] == -1:
            raise DiagramError("inconsistent Seifert circle nesting")
        twisted = {"l": interior["l"] == 1, "r": interior["r"] == -1}
        boxes.append((d.signs[i], interior["l"], interior["r"]))

    edges = [(arc_circle[(i, "l")], arc_circle[(i, "r")]) for i in range(nc)]
    cycles = _fundamental_cycles(len(circles), edges)
    position = {}
    for k, visits in enumerate(circles):
        for idx, (i, side) in enumerate(visits):
            position[(i, side)] = idx

    curves = [_curve_pieces(cyc, circles, arc_circle, position) for cyc in cycles]
    m = len(curves)
    V = [[0] * m for _ in range(m)]
    for a in range(m):
        for b in range(m):
            total = 0
            for i, pieces_a in curves[a].items():
                pieces_b = curves[b].get(i)
                if not pieces_b:
                    continue
                for piece_a in pieces_a:
                    for piece_b in pieces_b:
                        total += _box_linking(boxes[i], piece_a, piece_b)
            V[a][b] = total
    return SeifertData(len(circles), nc, d.n, tuple(tuple(r) for r in V))


def _curve_pieces(steps, circles, arc_circle, position):
    """Pieces of the curve realising a cycle, grouped by crossing box."""
    pieces: dict[int, list[tuple[str, str]]] = {}
    k = len(steps)
    for idx, (i, frm, to) in enumerate(steps):
        side_from = "l" if arc_circle[(i, "l")] == frm and arc_circle[(i, "r")] == to else "r"
        pieces.setdefault(i, []).append(("band", side_from))
        # travel forward along circle ``to`` until the next band
        j, nfrm, _ = steps[(idx + 1) % k]
        assert nfrm == to
        side_here = "r" if side_from == "l" else "l"
        side_next = "l" if arc_circle[(j, "l")] == to else "r"
        visits = circles[to]
        start = position[(i, side_here)]
        stop = position[(j, side_next)]
        p = (start + 1) % len(visits)
        while p != stop:
            ci, cs = visits[p]
            pieces.setdefault(ci, []).append(("pass", cs))
            p = (p + 1) % len(visits)
    return pieces
