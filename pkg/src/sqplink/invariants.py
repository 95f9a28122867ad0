"""Conway polynomial, signature and genus data computed with exact integers."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .diagram import DiagramError, LinkDiagram
from .polynomial import ConwayPolynomial, interpolate, symmetric_laurent_to_conway
from .seifert import SeifertData

SKEIN_CROSSING_LIMIT = 12


def bareiss_det(M: list[list[int]]) -> int:
    """Fraction-free determinant of an integer matrix."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(r) for r in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for r in range(k + 1, n):
                if A[r][k] != 0:
                    A[k], A[r] = A[r], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def conway_polynomial(sd: SeifertData) -> ConwayPolynomial:
    """det(t^(-1/2) V^T - t^(1/2) V) written in z = t^(1/2) - t^(-1/2)."""
    V = [list(r) for r in sd.matrix]
    m = len(V)
    if m == 0:
        return ConwayPolynomial.one()
    xs = list(range(m + 1))
    ys = []
    for t in xs:
        ys.append(bareiss_det([[V[j][i] - t * V[i][j] for j in range(m)] for i in range(m)]))
    p = interpolate(xs, ys)
    laurent = {2 * k - m: c for k, c in enumerate(p) if c}
    try:
        return symmetric_laurent_to_conway(laurent)
    except ValueError as exc:
        raise ArithmeticError(f"Seifert determinant is not a polynomial in z: {laurent}") from exc


def symmetric_signature(S: list[list[int]]) -> int:
    """Signature of a symmetric integer matrix by congruence diagonalization over Q."""
    A = [[Fraction(x) for x in r] for r in S]
    n = len(A)
    for r in range(n):
        for c in range(n):
            if A[r][c] != A[c][r]:
                raise ValueError("matrix is not symmetric")
    sig = 0
    active = list(range(n))
    while active:
        k = next((i for i in active if A[i][i] != 0), None)
        if k is None:
            pair = next(((i, j) for i in active for j in active if i != j and A[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # replace basis vector e_i by e_i + e_j; diagonal becomes 2 A[i][j] (+A[j][j]=0)
            for c in range(n):
                A[i][c] += A[j][c]
            for r in range(n):
                A[r][i] += A[r][j]
            k = i
        piv = A[k][k]
        sig += 1 if piv > 0 else -1
        active.remove(k)
        for i in active:
            f = A[i][k] / piv
            if f:
                for c in range(n):
                    A[i][c] -= f * A[k][c]
                for r in range(n):
                    A[r][i] -= f * A[r][k]
    return sig


def signature(sd: SeifertData) -> int:
    V = sd.matrix
    m = len(V)
    return symmetric_signature([[V[i][j] + V[j][i] for j in range(m)] for i in range(m)])


def determinant(sd: SeifertData) -> int:
    V = sd.matrix
    m = len(V)
    return abs(bareiss_det([[V[i][j] + V[j][i] for j in range(m)] for i in range(m)]))


# ---------------------------------------------------------------------------
# skein oracle


def switch_crossing(d: LinkDiagram, i: int) -> LinkDiagram:
    a, b, c, e = d.crossings[i]
    new = (e, a, b, c) if d.over_in[i] == 3 else (b, c, e, a)
    cr = list(d.crossings)
    cr[i] = new
    hint = list(d.over_in)
    hint[i] = 4 - hint[i]
    return LinkDiagram(tuple(cr), d.free_loops, hint=tuple(hint))


def smooth_crossing(d: LinkDiagram, i: int) -> LinkDiagram:
    """Oriented smoothing at crossing i."""
    a, b, c, e = d.crossings[i]
    parent: dict[int, int] = {}

    def find(x):
        while parent.get(x, x) != x:
            x = parent[x]
        return x

    def union(x, y):
        x, y = find(x), find(y)
        if x != y:
            parent[y] = x

    if d.over_in[i] == 3:
        union(a, b)
        union(e, c)
    else:
        union(a, e)
        union(b, c)
    rest = [cr for k, cr in enumerate(d.crossings) if k != i]
    new = tuple(tuple(find(x) for x in cr) for cr in rest)
    used = {x for cr in new for x in cr}
    loops = len({find(x) for x in (a, b, c, e)} - used)
    hint = tuple(o for k, o in enumerate(d.over_in) if k != i)
    return LinkDiagram(new, d.free_loops + loops, hint=hint if new else None)


def _first_bad_crossing(d: LinkDiagram) -> int | None:
    """First crossing met as an under-strand on a base-pointed traversal.

    Base points are the smallest edge label of each component, and components
    are visited in order of that label, so switching a crossing never changes
    the traversal.
    """
    comps = []
    for comp in d.strand_components:
        labels = [d.crossings[i][p] for i, p in comp]
        k = labels.index(min(labels))
        comps.append((labels[k], comp[k:] + comp[:k]))
    comps.sort()
    seen = set()
    for _, comp in comps:
        for i, p in comp:
            if i in seen:
                continue
            seen.add(i)
            if p == 0:
                return i
    return None


@lru_cache(maxsize=100_000)
def _skein(d: LinkDiagram) -> ConwayPolynomial:
    if d.is_split_diagram():
        return ConwayPolynomial.zero()
    if not d.crossings:
        return ConwayPolynomial.one()
    i = _first_bad_crossing(d)
    if i is None:
        # descending diagram: an unlink
        return ConwayPolynomial.one() if d.n == 1 else ConwayPolynomial.zero()
    switched = _skein(switch_crossing(d, i))
    smoothed = _skein(smooth_crossing(d, i)).shift(1)
    return switched + smoothed if d.signs[i] > 0 else switched - smoothed


def conway_by_skein(d: LinkDiagram, limit: int = SKEIN_CROSSING_LIMIT) -> ConwayPolynomial:
    """Conway polynomial from the skein relation and descending diagrams."""
    if len(d.crossings) > limit:
        raise DiagramError(f"{len(d.crossings)} crossings exceeds the skein budget of {limit}")
    return _skein(LinkDiagram(d.crossings, d.free_loops, hint=d.over_in))


# ---------------------------------------------------------------------------


def genus_and_norm_alternating(d: LinkDiagram, conway: ConwayPolynomial,
                               sd: SeifertData | None = None) -> tuple[int, int]:
    """Seifert genus and Thurston norm of a non-split alternating link.

    The canonical surface of a reduced alternating diagram has minimal genus;
    the Conway degree must agree (deg = 2g + n - 1), otherwise an error is
    raised rather than picking one of the two values.
    """
    if d.is_split_diagram():
        raise DiagramError("genus pipeline refuses split diagrams")
    if not d.is_alternating():
        raise DiagramError("diagram is not alternating")
    if sd is None:
        from .seifert import seifert_algorithm

        sd = seifert_algorithm(d)
    g = sd.genus
    n = d.n
    if conway.degree != 2 * g + n - 1:
        raise ArithmeticError(
            f"Conway degree {conway.degree} disagrees with canonical genus {g} (n={n})")
    # no crossing-free split unknots here, so the norm is -chi of a connected minimal surface
    norm = max(2 * g + n - 2, 0)
    return g, norm
