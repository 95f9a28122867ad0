"""Combinatorial link Floer homology of grid diagrams over GF(2).

Two complexes are built on the N! grid states:

* the fully blocked complex, whose differential counts empty rectangles
  containing no marking at all; its homology is the hat theory tensored
  with N - n copies of a two-dimensional space W supported in bigradings
  (0, 0) and (-1, -1);
* the O-avoiding complex, whose rectangles may contain X markings.  It is
  filtered by the collapsed Alexander grading, and its homology has rank
  2^(N-1) in total.

Tensor factors of W are removed by exact polynomial division, so every
reported rank refers to the hat theory.
"""

from __future__ import annotations

import math
import os
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterator

import numpy as np
from scipy import sparse

from .grid import GridDiagram

DEFAULT_GRID_CAP = 10
# measured peak memory of grid_homology per grid state (about 2.5 GB at N = 10)
BYTES_PER_STATE = 700


class GridCapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class GridState:
    """A grid state; ``perm[c]`` is the row of the point on column c."""

    perm: tuple[int, ...]
    maslov: int
    alexander: int


def _check_cap(g: GridDiagram, cap: int):
    if g.N > cap:
        raise GridCapExceeded(f"grid of size {g.N} exceeds the cap {cap}")


def _physical_memory() -> int | None:
    try:
        return os.sysconf("SC_PAGE_SIZE") * os.sysconf("SC_PHYS_PAGES")
    except (AttributeError, ValueError, OSError):
        return None


def _check_budget(N: int):
    """Refuse complexes whose estimated footprint exceeds 80% of physical memory."""
    need = math.factorial(N) * BYTES_PER_STATE
    total = _physical_memory()
    if total and need > 0.8 * total:
        raise GridCapExceeded(f"grid of size {N} needs about {need >> 20} MiB, "
                              f"more than the memory budget of {int(0.8 * total) >> 20} MiB")


# ---------------------------------------------------------------------------
# gradings


def _twice_maslov(states: np.ndarray, marks: tuple[int, ...]) -> np.ndarray:
    """2 * M_P(x) for the marking set P with ``marks[r]`` the column in row r.

    M_P(x) = J(x, x) - 2 J(x, P) + J(P, P) + 1 with J symmetrised from the
    count I(A, B) of pairs a in A, b in B with a below and left of b.
    """
    N = states.shape[1]
    cols = np.arange(N)
    jxx = np.zeros(len(states), dtype=np.int64)
    for i in range(N):
        for j in range(i + 1, N):
            jxx += states[:, i] < states[:, j]
    ixp = np.zeros(len(states), dtype=np.int64)
    ipx = np.zeros(len(states), dtype=np.int64)
    for r, c in enumerate(marks):
        left = cols <= c
        ixp += ((states <= r) & left).sum(axis=1)
        ipx += ((states > r) & ~left).sum(axis=1)
    jpp = sum(1 for r in range(N) for s in range(r + 1, N) if marks[r] < marks[s])
    return 2 * jxx - 2 * (ixp + ipx) + 2 * jpp + 2


def _grading_arrays(g: GridDiagram, states: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    mo2 = _twice_maslov(states, g.O)
    mx2 = _twice_maslov(states, g.X)
    if np.any(mo2 % 2) or np.any(mx2 % 2):
        raise ArithmeticError("non-integral Maslov grading")
    maslov = mo2 // 2
    a2 = (mo2 - mx2) // 2 - (g.N - g.n)
    if np.any(a2 % 2):
        raise ArithmeticError("non-integral collapsed Alexander grading")
    return maslov, a2 // 2


def _all_states(N: int) -> np.ndarray:
    return np.array(list(permutations(range(N))), dtype=np.int8).reshape(-1, N)


def enumerate_states(g: GridDiagram, cap: int = DEFAULT_GRID_CAP,
                     chunk: int = 5040) -> Iterator[GridState]:
    """All N! states with their gradings, produced in lexicographic order."""
    _check_cap(g, cap)
    it = permutations(range(g.N))
    while True:
        block = [p for _, p in zip(range(chunk), it)]
        if not block:
            return
        arr = np.array(block, dtype=np.int8)
        m, a = _grading_arrays(g, arr)
        for p, mi, ai in zip(block, m.tolist(), a.tolist()):
            yield GridState(p, mi, ai)


# ---------------------------------------------------------------------------
# rectangles


def _rectangles(g: GridDiagram, states: np.ndarray, codes: np.ndarray,
                allow_x: bool, threads: int = 1):
    """Empty rectangles out of every state.

    Returns arrays (source, target, x_count).  Rectangles never contain O
    markings; X markings are allowed only when ``allow_x`` is set.
    """
    N = g.N
    weights = N ** np.arange(N - 1, -1, -1, dtype=np.int64)
    pairs = [(a, b) for a in range(N) for b in range(N) if a != b]

    def one(pair):
        a, b = pair
        w = (b - a) % N
        xa = states[:, a].astype(np.int64)
        xb = states[:, b].astype(np.int64)
        h = (xb - xa) % N
        ok = np.ones(len(states), dtype=bool)
        for t in range(1, w):
            k = (a + t) % N
            rel = (states[:, k] - xa) % N
            ok &= ~((rel > 0) & (rel < h))
        nx = np.zeros(len(states), dtype=np.int8)
        for t in range(w):
            c = (a + t) % N
            ok &= (g.O_row[c] - xa) % N >= h
            inside_x = (g.X_row[c] - xa) % N < h
            if allow_x:
                nx += inside_x
            else:
                ok &= ~inside_x
        src = np.flatnonzero(ok)
        tcode = codes[src] + (xb[src] - xa[src]) * (weights[a] - weights[b])
        tgt = np.searchsorted(codes, tcode)
        return src.astype(np.int32), tgt.astype(np.int32), nx[src]

    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            parts = list(ex.map(one, pairs))
    else:
        parts = [one(p) for p in pairs]
    src = np.concatenate([p[0] for p in parts])
    tgt = np.concatenate([p[1] for p in parts])
    nx = np.concatenate([p[2] for p in parts])
    return src, tgt, nx


@dataclass
class _Complex:
    g: GridDiagram
    states: np.ndarray
    maslov: np.ndarray
    alexander: np.ndarray
    src: np.ndarray
    tgt: np.ndarray

    def boundary_matrix(self):
        n = len(self.states)
        data = np.ones(len(self.src), dtype=np.int64)
        return sparse.csr_matrix((data, (self.tgt, self.src)), shape=(n, n))

    def d_squared_is_zero(self) -> bool:
        D = self.boundary_matrix()
        DD = (D @ D).tocoo()
        return bool(np.all(DD.data % 2 == 0))


def _build(g: GridDiagram, allow_x: bool, cap: int, threads: int) -> _Complex:
    _check_cap(g, cap)
    _check_budget(g.N)
    states = _all_states(g.N)
    weights = g.N ** np.arange(g.N - 1, -1, -1, dtype=np.int64)
    codes = states.astype(np.int64) @ weights
    maslov, alexander = _grading_arrays(g, states)
    src, tgt, nx = _rectangles(g, states, codes, allow_x, threads)
    # gradings: M drops by one, A drops by the number of X markings crossed
    if np.any(maslov[tgt] != maslov[src] - 1) or np.any(alexander[tgt] != alexander[src] - nx):
        raise ArithmeticError("rectangle does not respect the gradings")
    return _Complex(g, states, maslov, alexander, src, tgt)


# ---------------------------------------------------------------------------
# GF(2) linear algebra on sparse columns (sets of row positions)


def _columns(cx: _Complex, pos: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Boundary columns in CSR form: the rows of source s are
    ``rows[ptr[s]:ptr[s+1]]``, with ``pos`` mapping targets to rows.
    Parallel rectangles cancel mod 2."""
    n = len(cx.states)
    key = cx.src.astype(np.int64) * n + cx.tgt
    key.sort()
    if len(key):
        starts = np.flatnonzero(np.r_[True, key[1:] != key[:-1]])
        odd = np.diff(np.r_[starts, len(key)]) % 2 == 1
        key = key[starts[odd]]
    src = key // n
    rows = pos[key % n].astype(np.int32)
    ptr = np.searchsorted(src, np.arange(n + 1))
    return ptr, rows


def _reduce(col, pivots: dict[int, frozenset]):
    while col:
        p = pivots.get(max(col))
        if p is None:
            break
        col = col ^ p
    return col


def _gf2_rank(columns) -> int:
    pivots: dict[int, frozenset] = {}
    for col in columns:
        col = _reduce(set(col), pivots)
        if col:
            pivots[max(col)] = frozenset(col)
    return len(pivots)


def _divide_w(counts: dict[tuple[int, int], int], k: int) -> dict[tuple[int, int], int]:
    """Divide a bigraded count (keys (m, s)) by (1 + x^-1 y^-1)^k exactly."""
    for _ in range(k):
        by_diag: dict[int, dict[int, int]] = defaultdict(dict)
        for (m, s), c in counts.items():
            if c:
                by_diag[m - s][s] = c
        out: dict[tuple[int, int], int] = {}
        for dg, row in by_diag.items():
            q: dict[int, int] = {}
            for s in range(max(row), min(row) - 2, -1):
                q[s] = row.get(s, 0) - q.get(s + 1, 0)
                if q[s] < 0:
                    raise ArithmeticError("rank table is not divisible by the W factor")
            if q[min(row) - 1] != 0:
                raise ArithmeticError("rank table is not divisible by the W factor")
            for s, c in q.items():
                if c:
                    out[(s + dg, s)] = c
        counts = out
    return counts


def _block_homology(cx: _Complex) -> dict[tuple[int, int], int]:
    """Ranks of the homology of a grading-preserving complex, keyed by (M, A)."""
    blocks: dict[tuple[int, int], list[int]] = defaultdict(list)
    for idx, key in enumerate(zip(cx.maslov.tolist(), cx.alexander.tolist())):
        blocks[key].append(idx)
    local = np.zeros(len(cx.states), dtype=np.int64)
    for members in blocks.values():
        local[members] = np.arange(len(members))
    ptr, rows = _columns(cx, local)
    rank_out = {}
    for key, members in blocks.items():
        rank_out[key] = _gf2_rank(rows[ptr[i]:ptr[i + 1]].tolist() for i in members
                                  if ptr[i + 1] > ptr[i])
    ranks = {}
    for (m, a), members in blocks.items():
        h = len(members) - rank_out[(m, a)] - rank_out.get((m + 1, a), 0)
        if h:
            ranks[(m, a)] = h
    return ranks


def _essential_classes(cx: _Complex) -> dict[tuple[int, int], int]:
    """Persistence of the Alexander filtration: births of essential classes.

    Generators are ordered by (A, index); columns of each degree are reduced
    from the top degree down, skipping columns cleared by the pivots of the
    degree above.  Returns counts keyed by (M, A) of the birth generator.
    """
    order = np.lexsort((np.arange(len(cx.states)), cx.alexander))
    by_degree: dict[int, list[int]] = defaultdict(list)
    for i in order.tolist():
        by_degree[int(cx.maslov[i])].append(i)
    pos = np.zeros(len(cx.states), dtype=np.int64)
    for members in by_degree.values():
        pos[members] = np.arange(len(members))
    ptr, rows = _columns(cx, pos)
    killed = np.zeros(len(cx.states), dtype=bool)
    cleared = np.zeros(len(cx.states), dtype=bool)
    for m in sorted(by_degree, reverse=True):
        lower = by_degree.get(m - 1, [])
        pivots: dict[int, frozenset] = {}
        for i in by_degree[m]:
            a, b = ptr[i], ptr[i + 1]
            if cleared[i] or a == b:
                continue
            col = _reduce(set(rows[a:b].tolist()), pivots)
            if col:
                low = max(col)
                pivots[low] = frozenset(col)
                killed[lower[low]] = cleared[lower[low]] = True
                killed[i] = True
    out: dict[tuple[int, int], int] = defaultdict(int)
    for i in np.flatnonzero(~killed).tolist():
        out[(int(cx.maslov[i]), int(cx.alexander[i]))] += 1
    return dict(out)


# ---------------------------------------------------------------------------


@dataclass
class GridHomologyTable:
    N: int
    n: int
    ranks: dict[tuple[int, int], int]
    s_top: int
    dim_top: int
    tau_min: int | None = None
    tau_max: int | None = None
    tau_set: tuple[int, ...] = field(default=())

    @property
    def fibered(self) -> bool:
        return self.dim_top == 1

    def summary(self) -> str:
        return (f"s_top={self.s_top}, dim_top={self.dim_top}, "
                f"tau_min={self.tau_min}, tau_max={self.tau_max}")

    def rank_table(self) -> str:
        """Rows are Maslov gradings (descending), columns Alexander gradings."""
        if not self.ranks:
            return "(zero)"
        ms = sorted({m for m, _ in self.ranks}, reverse=True)
        ss = sorted({s for _, s in self.ranks})
        width = max(3, max(len(str(s)) for s in ss) + 1)
        head = "M\\A".rjust(5) + "".join(str(s).rjust(width) for s in ss)
        lines = [head]
        for m in ms:
            cells = "".join(str(self.ranks.get((m, s), 0) or ".").rjust(width) for s in ss)
            lines.append(str(m).rjust(5) + cells)
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "n": self.n,
            "ranks": [[m, s, r] for (m, s), r in sorted(self.ranks.items())],
            "s_top": self.s_top,
            "dim_top": self.dim_top,
            "tau_min": self.tau_min,
            "tau_max": self.tau_max,
            "tau_set": list(self.tau_set),
        }


def fully_blocked_homology(g: GridDiagram, cap: int = DEFAULT_GRID_CAP,
                           threads: int = 1) -> GridHomologyTable:
    """Hat link Floer ranks from the fully blocked grid complex."""
    cx = _build(g, allow_x=False, cap=cap, threads=threads)
    tilde = _block_homology(cx)
    hat = _divide_w(tilde, g.N - g.n)
    s_top = max(s for _, s in hat)
    dim_top = sum(r for (_, s), r in hat.items() if s == s_top)
    return GridHomologyTable(g.N, g.n, hat, s_top, dim_top)


def filtered_essential_classes(g: GridDiagram, cap: int = DEFAULT_GRID_CAP,
                               threads: int = 1) -> dict[tuple[int, int], int]:
    """Filtration levels of a basis of the hat homology of the O-avoiding complex."""
    cx = _build(g, allow_x=True, cap=cap, threads=threads)
    ess = _essential_classes(cx)
    if sum(ess.values()) != 2 ** (g.N - 1):
        raise ArithmeticError("O-avoiding homology does not have rank 2^(N-1)")
    return _divide_w(ess, g.N - g.n)


def tau_min(g: GridDiagram, cap: int = DEFAULT_GRID_CAP, threads: int = 1) -> int:
    """Lowest Alexander level whose filtered cycles reach nonzero homology."""
    return min(s for _, s in filtered_essential_classes(g, cap, threads))


def tau_from_filtration(g: GridDiagram, cap: int = DEFAULT_GRID_CAP,
                        threads: int = 1) -> tuple[int, int]:
    """(tau_min, tau_max); tau_max is minus tau_min of the mirror grid."""
    return tau_min(g, cap, threads), -tau_min(g.mirror(), cap, threads)


def grid_homology(g: GridDiagram, cap: int = DEFAULT_GRID_CAP, threads: int = 1) -> GridHomologyTable:
    """Blocked ranks together with the filtration data."""
    table = fully_blocked_homology(g, cap, threads)
    ess = filtered_essential_classes(g, cap, threads)
    table.tau_min = min(s for _, s in ess)
    table.tau_max = -tau_min(g.mirror(), cap, threads)
    table.tau_set = tuple(sorted(s for (_, s), c in ess.items() for _ in range(c)))
    return table


def d_squared_is_zero(g: GridDiagram, allow_x: bool, cap: int = DEFAULT_GRID_CAP) -> bool:
    return _build(g, allow_x, cap, 1).d_squared_is_zero()


def o_avoiding_total_rank(g: GridDiagram, cap: int = DEFAULT_GRID_CAP) -> int:
    """Total rank of the O-avoiding homology (before removing W factors)."""
    cx = _build(g, allow_x=True, cap=cap, threads=1)
    return sum(_essential_classes(cx).values())
