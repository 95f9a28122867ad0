import json

import pytest

from sqplink import (
    BandFactorization,
    ConsistencyAlarm,
    ConwayPolynomial,
    GridHomologyTable,
    Method,
    braid_closure,
    classify,
    detect_fibered_alternating,
    detect_sqp_alternating,
    expand_band_factorization,
    fiberedness_and_sqp_via_oracle,
    main_theorem_check,
    max_self_linking,
    parse_braid,
    parse_conway,
    parse_pd,
    self_linking_of_braid,
    tau_alternating,
)
from sqplink.database import classify_row

from conftest import braid_diagrams, database

HOPF_PD = "PD[X(4,2,3,1), X(2,4,1,3)]"


def row(name):
    return next(r for r in database() if r.name == name)


def test_detect_fibered_alternating():
    assert detect_fibered_alternating(parse_conway("z"), 2, False)
    assert not detect_fibered_alternating(ConwayPolynomial.zero(), 2, True)
    assert not detect_fibered_alternating(parse_conway("1 + 2z^2"), 1, False)
    r = classify(row("L5a1{0}").diagram)
    assert r.fibered and not r.sqp and r.verdict == "N"


def test_detect_sqp_alternating():
    assert detect_sqp_alternating(parse_conway("z"), -1)
    assert not detect_sqp_alternating(parse_conway("1 - z^2"), 0)
    assert detect_sqp_alternating(parse_conway("2z + z^3"), -3)
    assert not detect_sqp_alternating(parse_conway("2z + z^3"), 3)
    assert not detect_sqp_alternating(parse_conway("1 + 2z^2"), -2)


def test_tau_alternating():
    assert tau_alternating(-1, 2) == 1
    assert tau_alternating(0, 1) == 0
    assert tau_alternating(-2, 1) == 1
    with pytest.raises(ArithmeticError):
        tau_alternating(-1, 1)


def test_max_self_linking():
    assert max_self_linking(1, 2) == 0
    assert max_self_linking(2, 2) == 2
    assert max_self_linking(1, 1) == 1 == self_linking_of_braid(parse_braid("2: 1 1 1"))


def test_main_theorem_check():
    assert main_theorem_check(1, 0, 2)
    assert not main_theorem_check(0, 1, 1)
    r = classify(row("L6a3{0}").diagram)
    assert main_theorem_check(r.tau if r.sqp_L else r.tau_mirror, r.g3, r.n)
    assert r.SL == 4


@pytest.mark.parametrize("name,verdict", [("L2a1{0}", "Y (0)"), ("L2a1{1}", "Y (0)"),
                                          ("L4a1{1}", "Y (2)"), ("L6a3{0}", "Y (4)"),
                                          ("L8a14{0}", "Y (6)"), ("L9a55{1,0,1}", "N")])
def test_classify_alternating_rows(name, verdict):
    r = classify(row(name).diagram)
    assert r.method is Method.ALTERNATING
    assert r.verdict == verdict


def test_classify_with_grid_oracle():
    r = classify_row(row("L6n1{0,1}"))
    assert r.method is Method.GRID
    assert (r.fibered, r.sqp, r.SL, r.verdict) == (True, True, 3, "Y (3)")


def test_unknown_without_oracle():
    r = classify(row("L6n1{0,1}").diagram)
    assert r.method is Method.UNKNOWN
    assert r.verdict == "unknown"
    assert r.fibered is None and r.SL is None


def test_split_link_is_not_fibered():
    r = classify(braid_closure(parse_braid("2:")))
    assert r.split and r.fibered is False and r.verdict == "unknown"


def test_unknot_report():
    r = classify(parse_pd("PD[]"))
    assert (r.conway, r.signature, r.fibered, r.sqp_L, r.tau, r.SL) == (
        ConwayPolynomial.one(), 0, True, True, 0, -1)
    # the unknot is its own mirror and is allowed to be SQP on both sides
    assert r.sqp_mirror


def test_alternating_properties_on_corpus():
    reports = [classify(r.diagram) for r in database() if r.alternating]
    reports += [classify(d) for d in braid_diagrams() if d.is_alternating()]
    for r in reports:
        if r.split:
            continue
        assert r.norm == max(2 * r.g3 + r.n - 2, 0)
        if r.fibered:
            assert r.sqp_L == main_theorem_check(r.tau, r.g3, r.n)
            assert r.sqp_mirror == main_theorem_check(r.tau_mirror, r.g3, r.n)
            assert (r.SL is not None) == bool(r.sqp)
        else:
            assert r.SL is None


def test_mirror_paths_agree():
    for d in braid_diagrams() + [r.diagram for r in database() if r.alternating][:40]:
        if d.is_split_diagram() or not d.is_alternating():
            continue
        r, m = classify(d), classify(d.mirror())
        assert (m.sqp_L, m.sqp_mirror, m.tau, m.tau_mirror) == (r.sqp_mirror, r.sqp_L, r.tau_mirror, r.tau)
        assert m.verdict == r.verdict


@pytest.mark.parametrize("bands,strands", [(((1, 2), (1, 2)), 2), (((1, 2),) * 3, 2),
                                           (((1, 2),) * 4, 2), (((1, 2),) * 6, 2)])
def test_band_factorizations(bands, strands):
    w = expand_band_factorization(BandFactorization(strands, bands))
    r = classify(braid_closure(w))
    assert r.fibered and r.sqp_L
    assert self_linking_of_braid(w) == max_self_linking(r.tau, r.n) == r.SL


def test_consistency_alarm_on_both_sides():
    table = GridHomologyTable(N=5, n=1, ranks={(0, 1): 1}, s_top=1, dim_top=1, tau_min=-1, tau_max=1)
    with pytest.raises(ConsistencyAlarm):
        classify(braid_closure(parse_braid("2: 1 1 1 -1 1 -1")), table)


def test_oracle_mismatch_raises():
    # a fake oracle that contradicts the alternating formulas
    table = GridHomologyTable(N=4, n=2, ranks={(0, 0): 1}, s_top=0, dim_top=1, tau_min=0, tau_max=0)
    with pytest.raises(ConsistencyAlarm):
        classify(parse_pd(HOPF_PD), table)


def test_oracle_derivation():
    table = GridHomologyTable(N=5, n=1, ranks={}, s_top=1, dim_top=1, tau_min=1, tau_max=1)
    res = fiberedness_and_sqp_via_oracle(table)
    assert (res["fibered"], res["g3"], res["sqp_L"], res["sqp_mirror"], res["SL"]) == (True, 1, True, False, 1)
    fig8 = GridHomologyTable(N=6, n=1, ranks={}, s_top=1, dim_top=1, tau_min=0, tau_max=0)
    res = fiberedness_and_sqp_via_oracle(fig8)
    assert res["fibered"] and not res["sqp_L"] and not res["sqp_mirror"] and res["SL"] is None


def test_report_serialization():
    r = classify(parse_pd(HOPF_PD, "hopf"))
    data = json.loads(r.to_json())
    assert data["verdict"] == r.verdict == "Y (0)"
    assert data["conway"] == str(r.conway)
    text = r.to_text()
    assert "Y (0)" in text and "hopf" in text
    assert r.table_line() == "hopf  Y (0)"
