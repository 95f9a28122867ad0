import functools

import pytest

from sqplink import GridDiagram, braid_closure, parse_braid
from sqplink.database import bundled_database, load_fixture

# hand-checked grids
UNKNOT_GRID = GridDiagram((1, 0), (0, 1))
LEFT_TREFOIL_GRID = GridDiagram((0, 1, 2, 3, 4), (2, 3, 4, 0, 1))
RIGHT_TREFOIL_GRID = LEFT_TREFOIL_GRID.mirror()
FIGURE_EIGHT_GRID = GridDiagram((0, 5, 2, 1, 3, 4), (3, 1, 0, 4, 5, 2))
POSITIVE_HOPF_GRID = GridDiagram((2, 1, 0, 3), (0, 3, 2, 1))
NEGATIVE_HOPF_GRID = GridDiagram((0, 1, 2, 3), (2, 3, 0, 1))

BRAID_CORPUS = [
    "1:",
    "2: 1 1",
    "2: -1 -1",
    "2: 1 1 1",
    "2: -1 -1 -1",
    "3: 1 -2 1 -2",
    "2: 1 1 1 1",
    "2: 1 1 1 1 1 1",
    "3: 1 2 1 2",
    "3: 1 1 2 2",
    "3: 1 -2 1 1 -2",
    "4: 1 2 3 1 2 3",
    "3: 1 1 1 2 -1 2",
    "4: 1 -2 3 -2 1 -2 3",
    "3: -1 2 2 -1 2 2",
    "3: 1 2 -1 2 1 2",
]


@functools.lru_cache(maxsize=None)
def database():
    return tuple(bundled_database())


@functools.lru_cache(maxsize=None)
def fixture():
    return tuple(load_fixture())


def braid_diagrams():
    return [braid_closure(parse_braid(b)) for b in BRAID_CORPUS]


def corpus_diagrams():
    """Every PD diagram in the test corpus: database rows plus braid closures."""
    out = [row.diagram for row in database()]
    for b in BRAID_CORPUS:
        d = braid_closure(parse_braid(b))
        out.append(d)
    return out


def small_grids(max_n=8):
    """Database grids up to size ``max_n`` with their rows."""
    return [(row, row.grid_diagram) for row in database()
            if row.grid and row.grid_diagram.N <= max_n]


ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def record_criterion():
    def record(k: int, ok: bool, detail: str):
        ACCEPTANCE_RESULTS[k] = (ok, detail)
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'} - {detail}")
