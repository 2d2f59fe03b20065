import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from shintani.cli import main

DATA = Path(__file__).resolve().parent.parent / "data"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main([str(a) for a in argv], stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return p


def test_analyze_example_b():
    code, out, _ = run("analyze", DATA / "matrix_b.json")
    assert code == 0
    rep = json.loads(out)
    assert rep["families"] == [{"mu": [1, 1], "nu": 2, "l_range": "all", "witnesses": [[1], [2], [1, 2]]}]


def test_analyze_with_skeleton(tmp_path):
    p = write(tmp_path, "m.txt", "3 0 0\n0.5 2 7\n0 1 0\n")
    code, out, _ = run("analyze", p, "--skeleton")
    assert code == 0
    obj = json.loads(out)
    assert obj["skeleton_report_equal"]
    assert obj["skeleton"]["entries"] == [[1.0, 0.0, 0.0], [1.0, 1.0, 1.0], [0.0, 1.0, 0.0]]
    _, plain, _ = run("analyze", DATA / "matrix_a.json")
    assert obj["report"] == json.loads(plain)


def test_analyze_rejects_zero_row(tmp_path):
    p = write(tmp_path, "z.txt", "0 0\n1 1\n")
    code, out, err = run("analyze", p)
    assert code == 2 and out == ""
    assert json.loads(err) == {"error": "ZeroRow", "message": "row 1 has no positive entry", "row": 1}


def test_missing_file(tmp_path):
    code, _, err = run("analyze", tmp_path / "nope.json")
    assert code == 2 and json.loads(err)["error"] == "FileError"


@pytest.mark.parametrize("entries", [[[1, 0], [1, 1]], [[1, 1], [1, 1]]])
def test_verify_passes(tmp_path, entries):
    p = write(tmp_path, "m.json", json.dumps({"entries": entries}))
    code, out, _ = run("--quiet", "verify", p, "--samples", 300, "--seed", 7)
    assert code == 0
    obj = json.loads(out)
    assert obj["passed"] and len(obj["subsets"]) == 3
    assert run("--quiet", "verify", p, "--samples", 300, "--seed", 7)[1] == out


def test_verify_cap_exceeded(tmp_path):
    p = write(tmp_path, "wide.txt", " ".join(["1"] * 25) + "\n")
    code, _, err = run("verify", p)
    assert code == 2 and json.loads(err)["error"] == "SubsetCapExceeded"


def test_decompose_example():
    for alg in ("graph", "flow"):
        code, out, _ = run("decompose", DATA / "weights_example.json", "--algorithm", alg)
        assert code == 0
        obj = json.loads(out)
        assert obj["valid"] and obj["algorithm"] == alg and len(obj["parts"]) == 5


def test_decompose_infeasible():
    code, out, err = run("decompose", DATA / "weights_infeasible.json")
    assert code == 3 and out == ""
    assert json.loads(err)["violating_K"] == [1, 2]


def test_decompose_single_set(tmp_path):
    p = write(tmp_path, "one.json", json.dumps({"n": 2, "sets": [[1]], "sigma": [1.25, 0.5]}))
    code, out, _ = run("decompose", p)
    assert code == 0 and json.loads(out)["parts"] == [[1.25, 0.5]]


def test_eval_values():
    code, out, _ = run("eval", DATA / "riemann.txt", "--s", "2")
    assert code == 0 and abs(json.loads(out)["value"] - 1.6449340668482264) < 1e-6
    code, out, _ = run("eval", DATA / "matrix_mzv.txt", "--s", "1,2")
    assert code == 0 and abs(json.loads(out)["value"] - 1.2020569031595942) < 1e-5


def test_eval_complex_output(tmp_path):
    code, out, _ = run("eval", DATA / "riemann.txt", "--s", "3+1j")
    val = json.loads(out)["value"]
    assert code == 0 and set(val) == {"re", "im"}


def test_eval_outside_region():
    code, _, err = run("eval", DATA / "matrix_b.json", "--s", "0.5", "1.0")
    assert code == 2
    assert json.loads(err)["constraint"] == "σ₁+σ₂>2"


def test_eval_nonconverged_is_data():
    code, out, _ = run("eval", DATA / "riemann.txt", "--s", "1.01", "--max-terms", "32")
    assert code == 0 and json.loads(out)["converged"] is False


def test_mellin_check():
    code, out, _ = run("mellin-check", "--s", "3")
    assert code == 0 and json.loads(out)["abs_diff"] < 1e-4
    code, _, err = run("mellin-check", "--s", "1")
    assert code == 2 and json.loads(err)["error"] == "InvalidParameter"


def test_quiet_drops_summary():
    _, _, err = run("analyze", DATA / "matrix_b.json")
    assert "pole families" in err
    _, _, err = run("--quiet", "analyze", DATA / "matrix_b.json")
    assert err == ""


def test_round_trip_floats():
    _, out, _ = run("decompose", DATA / "weights_example.json", "--algorithm", "flow")
    obj = json.loads(out)
    assert json.loads(json.dumps(obj)) == obj


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "shintani.cli", "--quiet", "analyze", str(DATA / "matrix_a.json")],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert len(json.loads(proc.stdout)["families"]) == 4
