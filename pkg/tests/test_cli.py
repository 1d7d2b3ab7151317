import csv
import io
import json
import subprocess
import sys

import pytest

from merodiff.algebra import parse_poly
from merodiff.cli import run
from merodiff.dkp import RTable, compute_R
from merodiff.firstcount import first_profiles


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, err = call(*argv)
    return code, json.loads(out), err


# -- documented invocations -----------------------------------------------------------

def test_count_first_example_one():
    code, rec, _ = call_json("count-first", "-a", "1", "-b", "1", "-c", "2,2")
    assert code == 0
    assert rec["result"] == "1" and rec["agree"] is True
    assert list(rec) == ["command", "params", "result", "perMethod", "agree", "elapsedMs"]


def test_count_first_all_methods():
    code, rec, _ = call_json("count-first", "-a", "2", "-b", "2", "-c", "3,3", "--method", "all")
    assert code == 0 and rec["result"] == "2"
    assert set(rec["perMethod"].values()) == {"2"}


def test_dkp_r_prints_polynomial():
    code, rec, _ = call_json("dkp-r", "-i", "2", "-j", "2")
    assert code == 0 and rec["result"] == "4/3*w3 - 2*w1^2"
    code, out, _ = call("dkp-r", "-i", "3", "-j", "3", "--format", "plain")
    assert parse_poly(out.strip()) == compute_R(3, 3)


def test_count_second_example():
    code, rec, _ = call_json("count-second", "-a", "3", "-b", "1", "-c", "1", "-d", "3")
    assert code == 0 and rec["result"] == "2" and rec["agree"]


def test_dkp_w_and_flow():
    assert call_json("dkp-w", "-i", "3")[1]["result"] == "3*f3 + 3*f1^2"
    assert call_json("dkp-flow", "-i", "2", "-n", "2")[1]["result"] == "2*f3_1 + 2*f1_0*f1_1"


def test_classify():
    code, rec, _ = call_json("classify", "-A=1,1", "-B=-2,-2")
    assert code == 0 and rec["result"] == "FiniteFirstType"


@pytest.mark.parametrize("suite", ["paper", "dkp", "wdvv-theta"])
def test_verify_suites_pass(suite):
    code, rec, _ = call_json("verify", "--suite", suite)
    assert code == 0 and rec["result"]["passed"]


def test_verify_plain_output():
    code, out, _ = call("verify", "--suite", "dkp", "--order", "4", "--format", "plain")
    assert code == 0
    assert out.strip().splitlines()[-1] == "suite dkp: passed"


# -- falsifiability through the exit code ---------------------------------------------------

@pytest.mark.parametrize("argv", [
    ["--suite", "paper", "--perturb", "R:2,3"],
    ["--suite", "dkp", "--order", "6", "--perturb", "R:2,2=-1"],
    ["--suite", "first", "--max-pole-weight", "8", "--perturb", "R:2,4"],
    ["--suite", "second", "--weight", "8", "--perturb", "theta:4,1,1"],
    ["--suite", "wdvv-theta", "--perturb", "P:2,2"],
])
def test_perturbed_verify_exits_one(argv):
    code, rec, _ = call_json("verify", *argv)
    assert code == 1 and rec["result"]["passed"] is False


def test_bad_cache_entry_never_reaches_a_count(tmp_path):
    path = tmp_path / "r.json"
    RTable().fill(4).perturbed(1, 3, compute_R(1, 3)).store(path)
    code, rec, err = call_json("count-first", "-a", "1", "-b", "1", "-c", "4", "--cache-load", str(path))
    assert "rejected" in err and code == 0 and rec["agree"]


# -- invalid input --------------------------------------------------------------------------

@pytest.mark.parametrize("argv", [
    ["count-first", "-a", "1", "-b", "1", "-c", "2,3"],
    ["count-first", "-a", "1", "-b", "1", "-c", "x"],
    ["count-first", "-a", "1", "-b", "1", "-c", "2,2", "--method", "bogus"],
    ["count-first", "-a", "5", "-b", "5", "-c", "6,6", "--method", "hurwitz"],
    ["count-second", "-a", "3", "-b", "0", "-c", "1", "-d", "3"],
    ["dkp-r", "-i", "0", "-j", "2"],
    ["dkp-flow", "-i", "1", "-n", "0"],
    ["verify", "--suite", "nope"],
    ["verify", "--suite", "dkp", "--perturb", "R:2"],
    ["verify", "--suite", "dkp", "--perturb", "F:1,1,2,2"],
    ["verify", "--suite", "dkp", "--order", "1"],
    ["table", "first", "--max-pole-weight", "1"],
    ["classify", "-A=1,1", "-B=-2"],
    ["--no-such-flag"],
    [],
])
def test_invalid_input_exits_two(argv):
    code, out, err = call(*argv)
    assert code == 2 and out == ""
    assert err.startswith("error: ") and err.count("\n") == 1


def test_missing_cache_exits_two(tmp_path):
    code, _, err = call("dkp-r", "-i", "2", "-j", "2", "--cache-load", str(tmp_path / "none.json"))
    assert code == 2 and "not found" in err


# -- cache ------------------------------------------------------------------------------------

def test_cache_store_then_load(tmp_path):
    path = tmp_path / "r.json"
    assert call("dkp-r", "-i", "3", "-j", "3", "--cache-store", str(path))[0] == 0
    code, rec, err = call_json("dkp-r", "-i", "3", "-j", "3", "--cache-load", str(path))
    assert code == 0 and err == ""
    assert parse_poly(rec["result"]) == compute_R(3, 3)


def test_tampered_cache_is_rejected_and_recomputed(tmp_path):
    path = tmp_path / "r.json"
    call("dkp-r", "-i", "2", "-j", "3", "--cache-store", str(path))
    data = json.loads(path.read_text())
    for row in data["R"]:
        if (row["i"], row["j"]) == (2, 3):
            row["poly"][0]["coeff"] = "7/2"
    path.write_text(json.dumps(data))
    code, rec, err = call_json("dkp-r", "-i", "2", "-j", "3", "--cache-load", str(path))
    assert code == 0 and err.startswith("warning: cache")
    assert rec["result"] == "3/2*w4 - 3*w1*w2"


# -- output formats and determinism -------------------------------------------------------------

def _strip_elapsed(text):
    rec = json.loads(text)
    rec.pop("elapsedMs")
    return rec


@pytest.mark.parametrize("argv", [
    ["count-first", "-a", "2", "-b", "2", "-c", "2,2,2"],
    ["dkp-r", "-i", "4", "-j", "3"],
    ["table", "second", "--max-pole-weight", "6"],
    ["verify", "--suite", "paper"],
])
def test_json_is_deterministic(argv):
    first, second = call(*argv)[1], call(*argv)[1]
    assert _strip_elapsed(first) == _strip_elapsed(second)
    head = lambda s: s[: s.index('"elapsedMs"')]
    assert head(first) == head(second)


def test_first_table_csv():
    code, out, _ = call("table", "first", "--max-pole-weight", "6", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[0] == ["a", "b", "poles", "count"]
    assert ["1", "1", "2 2", "1"] in rows
    assert len(rows) - 1 == len(list(first_profiles(6)))


def test_second_table_csv_header():
    code, out, _ = call("table", "second", "--max-pole-weight", "5", "--format", "csv")
    assert out.splitlines()[0] == "a,b,c,poles,count"


def test_table_threads_do_not_change_output():
    one = call("table", "first", "--max-pole-weight", "8")[1]
    two = call("table", "first", "--max-pole-weight", "8", "--threads", "2")[1]
    one, two = _strip_elapsed(one), _strip_elapsed(two)
    one["params"].pop("threads"), two["params"].pop("threads")
    assert one == two


def test_counts_are_decimal_strings():
    _, rec, _ = call_json("table", "first", "--max-pole-weight", "4")
    assert all(isinstance(r["count"], str) for r in rec["result"])


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "merodiff", "dkp-w", "-i", "2", "--format", "plain"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.strip() == "2*f2"
