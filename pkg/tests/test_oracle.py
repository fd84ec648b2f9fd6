import json

import pytest

from heckecat import HeckeElement, verify_suite
from heckecat.errors import TooLong
from heckecat import oracle
from heckecat.oracle import CHECKS, bruhat_by_subword, kl_by_bar_solve, reduced_words, subword_set

from conftest import grp


def test_bar_solve_small(A2):
    s = A2.gen(1)
    assert kl_by_bar_solve(A2, A2.identity) == HeckeElement.std(A2, A2.identity)
    assert str(kl_by_bar_solve(A2, s)) == "H[1] + v·H[e]"


def test_reduced_words(A2):
    assert sorted(reduced_words(A2, A2.w0)) == [(1, 2, 1), (2, 1, 2)]
    assert subword_set(A2, A2.element("21")) == {A2.identity, A2.gen(1), A2.gen(2), A2.element("21")}
    assert bruhat_by_subword(A2, A2.gen(1), A2.element("21"))
    assert not bruhat_by_subword(A2, A2.gen(1), A2.gen(2))


def test_subword_cap():
    g = grp("B4")
    with pytest.raises(TooLong):
        reduced_words(g, g.w0)


@pytest.mark.parametrize("name", ["A1", "A2", "B2", "G2", "A3"])
def test_full_battery_passes(name):
    g = grp(name)
    report = verify_suite(g)
    assert [c.name for c in report.checks] == list(CHECKS)
    failed = [(c.name, c.counterexample) for c in report.checks if not c.passed]
    assert failed == []
    if g.rank > 1:
        assert all(c.count > 0 for c in report.checks)


def test_a3_diagnostics(A3):
    report = verify_suite(A3, ["kl_symmetry", "nabla_minus_simple", "ts_simple", "cs_simple", "zuckerman"])
    assert report.passed
    d = report.diagnostics
    assert len(d["P_not_w0_symmetric"]) > 0
    assert len(d["nabla_minus_simple_literal"]) == 12
    assert len(d["ts_printed_nabla_mismatch"]) == 3
    assert len(d["cs_printed_nabla_mismatch"]) == 3
    assert len(d["zuckerman_graded_negative"]) > 0


def test_report_serialization(A2):
    report = verify_suite(A2, ["quadratic", "braid"], seed=7)
    data = json.loads(report.dumps())
    assert data["group"] == "A2" and data["seed"] == 7 and data["pass"] is True
    assert [c["name"] for c in data["checks"]] == ["quadratic", "braid"]
    assert "overall: PASS" in report.text()
    assert report.check("braid").passed
    with pytest.raises(KeyError):
        report.check("nope")


def test_unknown_check(A2):
    with pytest.raises(KeyError):
        verify_suite(A2, ["nope"])


def test_failure_is_recorded(A2, monkeypatch):
    monkeypatch.setattr(oracle, "kl_by_bar_solve", lambda g, w: HeckeElement.zero(g))
    report = verify_suite(A2, ["oracle_kl", "quadratic"])
    assert not report.passed
    bad = report.check("oracle_kl")
    assert not bad.passed and bad.counterexample
    assert report.check("quadratic").passed
    assert "overall: FAIL" in report.text()
