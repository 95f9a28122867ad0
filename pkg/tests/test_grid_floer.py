import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sqplink import (
    DiagramError,
    GridDiagram,
    classify,
    enumerate_states,
    fully_blocked_homology,
    grid_homology,
    grid_to_diagram,
    tau_from_filtration,
)
from sqplink.gridfloer import (
    GridCapExceeded,
    _all_states,
    _grading_arrays,
    d_squared_is_zero,
    filtered_essential_classes,
    o_avoiding_total_rank,
)
from sqplink.detector import tau_alternating
from sqplink.invariants import signature
from sqplink.seifert import seifert_algorithm

from conftest import (
    FIGURE_EIGHT_GRID,
    LEFT_TREFOIL_GRID,
    NEGATIVE_HOPF_GRID,
    POSITIVE_HOPF_GRID,
    RIGHT_TREFOIL_GRID,
    UNKNOT_GRID,
    small_grids,
)

UNLINK_GRID = GridDiagram((1, 0, 3, 2), (0, 1, 2, 3))


@st.composite
def grids(draw, max_n=6):
    N = draw(st.integers(2, max_n))
    X = draw(st.permutations(range(N)))
    # O must differ from X in every row: shift by a random derangement
    shift = draw(st.permutations(range(N)).filter(lambda p: all(p[i] != i for i in range(N))))
    O = [X[shift[r]] for r in range(N)]
    return GridDiagram(tuple(X), tuple(O))


def test_state_counts():
    assert sum(1 for _ in enumerate_states(UNKNOT_GRID)) == 2
    assert sum(1 for _ in enumerate_states(RIGHT_TREFOIL_GRID)) == 120


def test_cap_refuses_large_grids():
    g = RIGHT_TREFOIL_GRID
    while g.N < 11:
        g = g.stabilize(0)
    with pytest.raises(GridCapExceeded):
        next(enumerate_states(g))
    with pytest.raises(GridCapExceeded):
        fully_blocked_homology(RIGHT_TREFOIL_GRID, cap=4)


def test_memory_budget(monkeypatch):
    import sqplink.gridfloer as gf
    monkeypatch.setattr(gf, "_physical_memory", lambda: 10 ** 4)
    with pytest.raises(GridCapExceeded):
        fully_blocked_homology(RIGHT_TREFOIL_GRID)
    # state streaming is not subject to the budget
    assert sum(1 for _ in enumerate_states(RIGHT_TREFOIL_GRID)) == 120


def test_cached_gradings_match_recomputation():
    states = list(enumerate_states(FIGURE_EIGHT_GRID))
    m, a = _grading_arrays(FIGURE_EIGHT_GRID, np.array([s.perm for s in states], dtype=np.int8))
    assert m.tolist() == [s.maslov for s in states]
    assert a.tolist() == [s.alexander for s in states]
    assert len(_all_states(4)) == 24


def test_unknot():
    t = grid_homology(UNKNOT_GRID)
    assert t.ranks == {(0, 0): 1}
    assert (t.s_top, t.dim_top, t.tau_min, t.tau_max) == (0, 1, 0, 0)
    assert t.fibered


def test_right_trefoil():
    t = fully_blocked_homology(RIGHT_TREFOIL_GRID)
    assert t.ranks == {(0, 1): 1, (-1, 0): 1, (-2, -1): 1}
    assert (t.s_top, t.dim_top) == (1, 1)
    assert tau_from_filtration(RIGHT_TREFOIL_GRID) == (1, 1)
    assert tau_from_filtration(LEFT_TREFOIL_GRID) == (-1, -1)


def test_hopf_links():
    assert tau_from_filtration(POSITIVE_HOPF_GRID) == (0, 1)
    assert tau_from_filtration(NEGATIVE_HOPF_GRID) == (-1, 0)
    t = fully_blocked_homology(POSITIVE_HOPF_GRID)
    assert t.ranks == {(0, 1): 1, (-1, 0): 2, (-2, -1): 1}


def test_figure_eight_fibered_not_sqp():
    t = grid_homology(FIGURE_EIGHT_GRID)
    assert (t.s_top, t.dim_top, t.tau_min, t.tau_max) == (1, 1, 0, 0)
    r = classify(grid_to_diagram(FIGURE_EIGHT_GRID), t)
    assert r.fibered and not r.sqp


def test_unlink_not_fibered():
    assert UNLINK_GRID.n == 2
    t = grid_homology(UNLINK_GRID)
    assert t.s_top == 0 and t.dim_top >= 2 and not t.fibered


HAND_GRIDS = [UNKNOT_GRID, RIGHT_TREFOIL_GRID, LEFT_TREFOIL_GRID, FIGURE_EIGHT_GRID,
              POSITIVE_HOPF_GRID, NEGATIVE_HOPF_GRID, UNLINK_GRID]


@pytest.mark.parametrize("g", HAND_GRIDS, ids=str)
@pytest.mark.parametrize("allow_x", [False, True])
def test_d_squared_hand_grids(g, allow_x):
    assert d_squared_is_zero(g, allow_x)


@given(grids())
@settings(max_examples=25, deadline=None)
def test_d_squared_random_grids(g):
    assert d_squared_is_zero(g, False)
    assert d_squared_is_zero(g, True)


@given(grids(max_n=6))
@settings(max_examples=25, deadline=None)
def test_total_rank_random_grids(g):
    assert o_avoiding_total_rank(g) == 2 ** (g.N - 1)


@given(grids(max_n=6))
@settings(max_examples=20, deadline=None)
def test_lemma_bounds_random_grids(g):
    t = grid_homology(g)
    assert 0 <= t.tau_max - t.tau_min <= g.n - 1
    # tau(L) + tau(L*) <= n - 1, with L* computed from the mirror grid
    assert t.tau_max + tau_from_filtration(g.mirror())[1] <= g.n - 1
    assert len(t.tau_set) == 2 ** (g.n - 1)


def _symmetric(ranks):
    return all(ranks.get((m - 2 * a, -a), 0) == r for (m, a), r in ranks.items())


@pytest.mark.parametrize("g", HAND_GRIDS, ids=str)
def test_rank_symmetry(g):
    assert _symmetric(fully_blocked_homology(g).ranks)


@pytest.mark.parametrize("g", [UNKNOT_GRID, POSITIVE_HOPF_GRID, RIGHT_TREFOIL_GRID], ids=str)
def test_stabilization_invariance(g):
    t = grid_homology(g)
    for row in range(g.N):
        s = grid_homology(g.stabilize(row))
        assert (s.s_top, s.dim_top, s.tau_min, s.tau_max) == (t.s_top, t.dim_top, t.tau_min, t.tau_max)
        assert s.ranks == t.ranks


def test_stabilize_rejects_bad_row():
    with pytest.raises(DiagramError):
        UNKNOT_GRID.stabilize(5)


def test_grid_operations():
    assert RIGHT_TREFOIL_GRID.mirror().mirror() == RIGHT_TREFOIL_GRID
    assert POSITIVE_HOPF_GRID.reverse_component(0).n == 2
    g = RIGHT_TREFOIL_GRID.stabilize(2)
    assert g.N == 6 and g.n == 1


def test_essential_classes_on_hopf():
    assert filtered_essential_classes(POSITIVE_HOPF_GRID) == {(0, 1): 1, (-1, 0): 1}


def test_oracle_agrees_with_signature_on_alternating_grids():
    checked = 0
    for row, g in small_grids(7):
        if not row.alternating:
            continue
        d = row.diagram
        tmin, tmax = tau_from_filtration(g)
        assert tmax == tau_alternating(signature(seifert_algorithm(d)), d.n), row.name
        assert 0 <= tmax - tmin <= d.n - 1
        checked += 1
    assert checked >= 5


def test_summary_and_table_format():
    t = grid_homology(RIGHT_TREFOIL_GRID)
    assert t.summary() == "s_top=1, dim_top=1, tau_min=1, tau_max=1"
    lines = t.rank_table().splitlines()
    assert lines[0].split() == ["M\\A", "-1", "0", "1"]
    assert lines[1].split() == ["0", ".", ".", "1"]
    d = t.to_dict()
    assert d["ranks"] == [[-2, -1, 1], [-1, 0, 1], [0, 1, 1]]


def test_thread_count_does_not_change_results():
    a = grid_homology(FIGURE_EIGHT_GRID, threads=1)
    b = grid_homology(FIGURE_EIGHT_GRID, threads=3)
    assert a.to_dict() == b.to_dict()
