import json

import pytest

from sqplink.cli import EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, main, resolve_input
from sqplink.database import (
    HEADER,
    DatabaseError,
    FixtureRow,
    ingest_csv,
    load_fixture,
    reproduce_table,
)

from conftest import database, fixture

HOPF_PD = "PD[X(4,2,3,1), X(2,4,1,3)]"


def write_csv(tmp_path, lines, name="db.csv"):
    p = tmp_path / name
    p.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return p


def test_ingest_valid_row(tmp_path):
    p = write_csv(tmp_path, [",".join(HEADER), f'L2a1{{1}},2,"{HOPF_PD}",true,'])
    rows = ingest_csv(p)
    assert len(rows) == 1
    assert rows[0].components == 2 and rows[0].diagram.n == 2 and rows[0].grid is None


def test_ingest_reports_bad_rows_with_line_numbers(tmp_path):
    p = write_csv(tmp_path, [
        ",".join(HEADER),
        f'good,2,"{HOPF_PD}",true,',
        'broken,1,"PD[X(1,2,3,4), X(1,1,2,3)]",true,',
        f'wrongcount,3,"{HOPF_PD}",true,',
        f'wrongflag,2,"{HOPF_PD}",false,',
        f'good,2,"{HOPF_PD}",true,',
        f'badgrid,2,"{HOPF_PD}",true,X=0,0;O=1,1',
    ])
    errors = []
    rows = ingest_csv(p, errors)
    assert [r.name for r in rows] == ["good"]
    assert [(e.line, e.name) for e in errors] == [
        (3, "broken"), (4, "wrongcount"), (5, "wrongflag"), (6, "good"), (7, "badgrid")]


def test_ingest_header_only(tmp_path):
    assert ingest_csv(write_csv(tmp_path, [",".join(HEADER)])) == []


def test_ingest_errors(tmp_path):
    with pytest.raises(DatabaseError):
        ingest_csv(tmp_path / "missing.csv")
    with pytest.raises(DatabaseError):
        ingest_csv(write_csv(tmp_path, ["name,pd"]))
    empty = tmp_path / "empty.csv"
    empty.write_text("", encoding="utf-8")
    with pytest.raises(DatabaseError):
        ingest_csv(empty)


def test_bundled_data():
    names = [r.name for r in database()]
    assert len(names) == len(set(names)) == len(fixture()) == 129
    assert set(names) == {f.name for f in fixture()}
    assert all(r.grid for r in database())


def test_fixture_format(tmp_path):
    p = tmp_path / "fx.tsv"
    p.write_text("# comment\nL2a1{0}\tY\t0\nL5a1{0}\tN\n", encoding="utf-8")
    assert load_fixture(p) == [FixtureRow("L2a1{0}", "Y", 0), FixtureRow("L5a1{0}", "N", None)]
    p.write_text("L2a1{0}\tY\n", encoding="utf-8")
    with pytest.raises(DatabaseError):
        load_fixture(p)
    p.write_text("L2a1{0}\tmaybe\t0\n", encoding="utf-8")
    with pytest.raises(DatabaseError):
        load_fixture(p)


def test_reproduce_table_examples_and_missing_rows():
    wanted = {"L4a1{1}", "L9a55{1,0,1}", "L7n1{0}"}
    db = [r for r in database() if r.name in wanted]
    fx = [f for f in fixture() if f.name in wanted] + [FixtureRow("L99a1{0}", "Y", 1)]
    report = reproduce_table(db, fx)
    got = {e.name: (e.status, e.got) for e in report.entries}
    assert got == {"L4a1{1}": ("MATCH", "Y (2)"), "L9a55{1,0,1}": ("MATCH", "N"),
                   "L7n1{0}": ("MATCH", "Y (4)"), "L99a1{0}": ("UNRESOLVED", "-")}
    assert report.ok
    assert [e.name for e in report.entries] == [f.name for f in fx]


def test_reproduce_table_flags_mismatch():
    db = [r for r in database() if r.name == "L2a1{0}"]
    report = reproduce_table(db, [FixtureRow("L2a1{0}", "Y", 2)])
    assert report.counts() == {"MATCH": 0, "MISMATCH": 1, "UNRESOLVED": 0}
    assert not report.ok


def test_grid_cap_gives_unresolved():
    db = [r for r in database() if r.name == "L6n1{0,1}"]
    report = reproduce_table(db, [FixtureRow("L6n1{0,1}", "Y", 3)], grid_cap=4)
    assert report.entries[0].status == "UNRESOLVED"


def test_reproduce_table_threads_deterministic():
    db, fx = list(database())[:20], list(fixture())[:20]
    a = reproduce_table(db, fx, threads=1)
    b = reproduce_table(db, fx, threads=4)
    assert a.to_json() == b.to_json()
    assert a.to_text() == reproduce_table(db, fx).to_text()


def test_resolve_input_kinds():
    assert resolve_input(HOPF_PD)[0].n == 2
    assert resolve_input("2: 1 1 1")[0].n == 1
    d, g = resolve_input("X=1,0;O=0,1")
    assert d.n == 1 and g.N == 2
    d, g = resolve_input("L6n1{0,1}")
    assert d.n == 3 and g is not None


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_detect_hopf(capsys):
    assert run(capsys, "detect", "2: 1 1") == (EXIT_OK, "Y (0)\n", "")


def test_cli_invariants_unknot(capsys):
    code, out, _ = run(capsys, "invariants", "PD[]", "--format", "json")
    data = json.loads(out)
    assert code == EXIT_OK
    assert (data["conway"], data["signature"], data["fibered"], data["sqp_L"], data["tau"], data["SL"]) == (
        "1", 0, True, True, 0, -1)


def test_cli_grid_hfl_unknot(capsys):
    code, out, _ = run(capsys, "grid-hfl", "X=1,0;O=0,1")
    assert code == EXIT_OK
    assert out.strip().splitlines()[-1] == "s_top=0, dim_top=1, tau_min=0, tau_max=0"
    code, out, _ = run(capsys, "grid-hfl", "X=1,0;O=0,1", "--format", "json")
    assert json.loads(out)["s_top"] == 0


def test_cli_text_and_json_agree(capsys):
    _, text, _ = run(capsys, "detect", "L6n1{0,1}")
    _, js, _ = run(capsys, "detect", "L6n1{0,1}", "--format", "json")
    assert text.strip() == json.loads(js)["verdict"] == "Y (3)"


def test_cli_usage_errors(capsys):
    assert run(capsys, "detect", "2: 5")[0] == EXIT_USAGE
    assert run(capsys, "detect", "not a link")[0] == EXIT_USAGE
    assert run(capsys, "grid-hfl", "L6n1{0,1}", "--grid-cap", "4")[0] == EXIT_USAGE
    assert run(capsys, "table", "--db", "/nonexistent.csv")[0] == EXIT_USAGE
    with pytest.raises(SystemExit) as exc:
        main(["detect"])
    assert exc.value.code == EXIT_USAGE


def test_cli_table_exit_codes(capsys, tmp_path):
    db = tmp_path / "db.csv"
    db.write_text(",".join(HEADER) + f'\nL2a1{{0}},2,"{HOPF_PD}",true,\n', encoding="utf-8")
    good = tmp_path / "good.tsv"
    good.write_text("L2a1{0}\tY\t0\n", encoding="utf-8")
    bad = tmp_path / "bad.tsv"
    bad.write_text("L2a1{0}\tN\n", encoding="utf-8")
    code, out, _ = run(capsys, "table", "--db", str(db), "--fixture", str(good))
    assert code == EXIT_OK and out.strip().endswith("MATCH=1 MISMATCH=0 UNRESOLVED=0")
    code, out, _ = run(capsys, "table", "--db", str(db), "--fixture", str(bad), "--format", "json")
    assert code == EXIT_MISMATCH and json.loads(out)["counts"]["MISMATCH"] == 1
