"""End-to-end acceptance run: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v``; the lines are printed
even without ``-s``.
"""

import io
import json
import time

import pytest

from merodiff.algebra import parse_poly
from merodiff.cli import run
from merodiff.dkp import RTable, compute_w
from merodiff.frobenius import check_subsystem_dkp, subsystem_sign
from merodiff.suites import (
    PRINTED_W,
    SUITES,
    suite_dkp,
    suite_first,
    suite_frobenius,
    suite_paper,
    suite_second,
    suite_wdvv_theta,
)


@pytest.fixture
def report(capsys):
    def emit(label, ok, seconds, limit=None, note=""):
        budget = f" (limit {limit:.0f}s)" if limit else ""
        extra = f"  {note}" if note else ""
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {label}: {seconds:.1f}s{budget}{extra}")
    return emit


def _failed(*results):
    return [f"{r.suite}: {c.name} [{c.detail}]" for r in results for c in r.checks if not c.passed]


def _timed(fn):
    start = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - start


def test_criterion_1_printed_regression_values(report):
    res, secs = _timed(suite_paper)
    bad = _failed(res)
    ok = not bad and secs < 5
    report("criterion 1, printed regression values", ok, secs, 5)
    assert not bad, bad
    assert secs < 5


def test_criterion_2_five_way_agreement(report):
    res, secs = _timed(lambda: suite_first(14, hurwitz_degree=6, oracle_weight=12))
    bad = _failed(res)
    total = res.checks[0].name.split(" on ")[1]
    ok = not bad and secs < 120
    report("criterion 2, five-way agreement", ok, secs, 120, total)
    assert not bad, bad
    assert secs < 120


def test_criterion_3_dkp_identities(report):
    def work():
        return suite_dkp(8), [i for i, s in PRINTED_W.items() if compute_w(i) != parse_poly(s)]
    (res, bad_w), secs = _timed(work)
    bad = _failed(res) + [f"w_{i}" for i in bad_w]
    ok = not bad and secs < 60
    report("criterion 3, dKP identities", ok, secs, 60)
    assert not bad, bad
    assert secs < 60


def test_criterion_4_second_type_counts(report):
    (second, seven), secs = _timed(lambda: (suite_second(10, max_a=8, max_pole=10),
                                            suite_wdvv_theta(10)))
    bad = _failed(second, seven)
    ok = not bad and secs < 180
    report("criterion 4, second-type counts and the seven-term relation", ok, secs, 180)
    assert not bad, bad
    assert secs < 180


def test_criterion_5_frobenius_suite(report):
    res, secs = _timed(lambda: suite_frobenius(10, index_bound=5, unit_bound=8, max_pos=4,
                                               alpha_max=4, subsystem="literal"))
    bad = _failed(res)
    ok = not bad and secs < 120
    report("criterion 5, Frobenius suite (subsystem with the literal substitution sign)",
           ok, secs, 120)
    assert not bad, bad
    assert secs < 120


@pytest.mark.xfail(strict=True, reason="d2F/dt^a dt^b equals -R/((a+1)(b+1)) under the "
                   "literal substitution t^{-c} = -w_{c-1}/(c-1); the +R form does not hold")
def test_criterion_5_subsystem_with_stated_sign(report):
    table = RTable()
    (ok, signs), secs = _timed(lambda: (
        check_subsystem_dkp(4, table, sign=1),
        sorted({subsystem_sign(a, b, table) for a in range(5) for b in range(5)})))
    report("criterion 5, subsystem against +R/((a+1)(b+1))", ok, secs, 120,
           f"observed signs {signs}")
    assert ok


PROBES = {
    "paper": ["R:2,2", "R:2,3=1/2", "theta:4,1,1"],
    "first": ["R:2,2", "R:1,3=-1", "R:3,4=2"],
    "dkp": ["R:2,2", "R:1,4=1/2", "R:3,3=-2"],
    "second": ["theta:4,1,1", "theta:5,2,1=-1", "P:3,3"],
    "wdvv-theta": ["theta:3,1,1", "P:1,2", "P:2,2=5"],
    "frobenius": ["F:1,1,2,2", "F:0,2,4=-1/2", "R:2,2"],
}


def test_criterion_6_falsifiability(report):
    outcomes = {}
    start = time.perf_counter()
    for suite in SUITES:
        for key in PROBES[suite]:
            out, err = io.StringIO(), io.StringIO()
            code = run(["verify", "--suite", suite, "--perturb", key], out, err)
            passed = json.loads(out.getvalue())["result"]["passed"] if code != 2 else None
            outcomes[(suite, key)] = (code, passed)
    secs = time.perf_counter() - start
    missed = {k: v for k, v in outcomes.items() if v != (1, False)}
    ok = not missed and all(len(PROBES[s]) >= 3 for s in SUITES)
    report("criterion 6, falsifiability probes", ok, secs,
           note=f"{len(outcomes) - len(missed)}/{len(outcomes)} probes exit 1")
    assert not missed, missed
