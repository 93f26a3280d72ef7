import io
import json
import subprocess
import sys

import pytest

from conftest import A3_PRESETS
from graded_borel.cli import run


def call(*argv, condition=None):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err, condition=condition)
    return code, out.getvalue(), err.getvalue()


def test_labels():
    code, out, _ = call("labels", "A", "3", "--n", "3", "--r", "1", "--format", "text")
    assert code == 0 and len(out.splitlines()) == 3
    code, out, _ = call("labels", "--family", "A", "--rank", "3", "--n", "1")
    assert code == 0 and len(json.loads(out)) == 1
    code, out, _ = call("labels", "A", "3", "--n", "4", "--r", "2")
    assert {tuple(l["s"]) for l in json.loads(out)} == {(0, 1, 1), (1, 0, 1)}


def test_labels_b2_against_orbits():
    from test_grading import _orbit_oracle
    code, out, _ = call("labels", "B", "2", "--n", "2", "--r", "1")
    got = [tuple(l["s"]) for l in json.loads(out)]
    orbits = _orbit_oracle("B", 2, 2, 1)
    assert len(got) == len(orbits)
    assert all(any(s in o for o in orbits) for s in got)


def test_classify_json_schema():
    code, out, _ = call("classify", "--preset", "a3-case1", "--k", "1")
    assert code == 0
    data = json.loads(out)
    assert set(data) == {"grading", "k", "sigmaPlus", "antichains", "count"}
    assert data["count"] == len(data["antichains"]) == 30
    entry = data["antichains"][0][0]
    assert set(entry) == {"weight", "grade"}
    assert all(isinstance(x, str) for x in entry["weight"])
    assert data["grading"]["n"] == 3


def test_classify_outer_and_text():
    code, out, _ = call("classify", "--preset", "a3-outer")
    assert code == 0 and json.loads(out)["count"] == 21
    code, out, _ = call("classify", "--preset", "a3-case3", "--format", "text")
    assert code == 0 and len(out.splitlines()) == 6


def test_classify_from_label_and_override():
    code, out, _ = call("classify", "--family", "A", "--rank", "3", "--label", "1,1,1,0", "--delta0", "0,0,-1")
    assert code == 0 and json.loads(out)["count"] == 30
    code, out, _ = call("classify", "A", "3", "--label", "1,1,0", "--r", "2", "--delta0", "1,0,0")
    assert code == 0 and json.loads(out)["count"] == 21


def test_json_round_trip_and_determinism():
    _, a, _ = call("classify", "--preset", "a3-outer", "--k", "2")
    _, b, _ = call("classify", "--preset", "a3-outer", "--k", "2")
    assert a == b
    assert json.dumps(json.loads(a)) + "\n" == a


@pytest.mark.parametrize("preset", A3_PRESETS)
@pytest.mark.parametrize("k", ["1", "2"])
def test_verify_presets(preset, k):
    code, out, _ = call("verify", "--preset", preset, "--k", k, "--format", "text")
    assert code == 0 and out.startswith("agree")


def test_verify_negative_control():
    code, out, _ = call("verify", "--preset", "a3-case3", "--format", "text", condition=lambda p, A, k: True)
    assert code == 1
    assert "classifier only" in out or "oracle only" in out


def test_grade_and_poset():
    code, out, _ = call("grade", "--preset", "a3-outer")
    data = json.loads(out)
    assert code == 0 and data["grading"]["dims"] == [4, 4, 3, 4]
    code, out, _ = call("poset", "--preset", "a3-case3")
    data = json.loads(out)
    assert code == 0 and len(data["sigmaPlus"]) == 6 and len(data["covers"]) == 4


@pytest.mark.parametrize("argv", [
    ["classify", "--family", "A", "--rank", "3", "--label", "1,1"],
    ["classify", "--family", "A", "--rank", "3", "--label", "a,b"],
    ["classify", "--preset", "nope"],
    ["classify", "--preset", "a3-case1", "--k", "0"],
    ["labels", "Q", "3", "--n", "3"],
    ["labels", "A", "3"],
    ["classify", "--preset", "a3-case1", "--format", "xml"],
    ["frobnicate"],
])
def test_bad_input_exit_2(argv):
    code, _, _ = call(*argv)
    assert code == 2


def test_console_script():
    res = subprocess.run([sys.executable, "-m", "graded_borel.cli", "labels", "A", "3", "--n", "3"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and len(json.loads(res.stdout)) == 3
