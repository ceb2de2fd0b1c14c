from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from futaki.cli import main
from futaki.errors import DegreeOverflow


def run(argv, stdin_text=""):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, stdin=io.StringIO(stdin_text), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def run_json(argv, payload):
    code, out, err = run(argv + ["--input", "-"], json.dumps(payload))
    assert code == 0, err
    return json.loads(out)


def test_compute_line():
    out = run_json(["compute"], {"kind": "ambient", "d": 1, "weights": [1, -1]})
    assert (out["F0"], out["F1"]) == ("0", "0")


def test_compute_cubic_shorthand():
    out = run_json(["compute"], {"kind": "cubic", "model": "F_Delta", "params": [1, 1, -2]})
    assert (out["F0"], out["F1"]) == ("0", "0")


def test_compute_cut_triangle():
    spec = {"kind": "polytope", "n": 2, "vertices": [[1, 0], [3, 0], [0, 3], [0, 1]], "weights": [1, 0]}
    out = run_json(["compute"], spec)
    assert out["F1"] == "1/24" and out["F0"] == "13/12"
    assert len(run_json(["compute", "--depth", "3"], spec)["deeper_terms"]) == 3


def test_compute_from_file(tmp_path):
    path = tmp_path / "spec.json"
    path.write_text(json.dumps({"kind": "hypersurface", "ambient": {"d": 2, "weights": [1, 0, 0]}, "degree": 2, "defining_weight": 1}))
    code, out, _ = run(["compute", "--input", str(path)])
    assert code == 0 and json.loads(out)["F1"] == "1/8"


def test_output_is_deterministic():
    payload = json.dumps({"kind": "ambient", "d": 3, "weights": [1, 2, 0, 5], "linearization_shift": -1})
    a = run(["compute", "--input", "-"], payload)
    b = run(["compute", "--input", "-"], payload)
    assert a == b


def test_expand_reports_requirements():
    data = {"n": 3, "Ln": 3, "points": [{"u_p": 1, "b_p": 1, "KM_Ep_nminus1": -1}, {"u_p": -1, "b_p": 1, "KM_Ep_nminus1": -2}]}
    out = run_json(["expand"], data)
    assert out["corollary_leading"] == "-1/2"
    deep = out["terms"][-1]
    assert deep["exponent"] == -3 and deep["coefficient"] is None
    assert "KX_Lnminus1" in deep["missing"]


def test_expand_at_average_is_zero():
    data = {"n": 2, "Ln": 1, "u_bar": "1/3", "points": [{"u_p": "1/3", "b_p": 2, "KM_Ep_nminus1": -1}]}
    assert run_json(["expand"], data)["corollary_leading"] == "0"


def test_expand_calibration_instance():
    data = {
        "n": 2, "Ln": 1, "FXL": 0, "u_bar": "1/3", "KX_Lnminus1": -3,
        "points": [{"label": "v0", "u_p": 0, "b_p": 1, "KM_Ep_nminus1": -1, "Ep_n": -1, "delta_u_p": 0}],
    }
    out = run_json(["expand"], data)
    assert [t["coefficient"] for t in out["terms"]] == ["0", "1/3", "-1"]
    assert [t["exponent"] for t in run_json(["expand", "--depth", "1"], data)["terms"]] == [0, -1]


def test_cubic_reports():
    eq = {"model": "F_Delta", "numbers": {f"p{j}": {"b": 1, "KM_E2": -2} for j in range(3)}}
    assert run_json(["cubic"], eq)["verdict"] == "INCONCLUSIVE-AT-THIS-ORDER"
    uneq = {"model": "F_Delta", "numbers": {f"p{j}": {"b": 1, "KM_E2": -1 - j} for j in range(3)}}
    out = run_json(["cubic"], uneq)
    assert out["verdict"] == "UNSTABLE" and out["witness_alpha"] is not None
    fab = {"model": "F_AB", "numbers": {"p0": {"b": 1, "KM_E2": -2}, "p2": {"b": 3, "KM_E2": 5}, "p4": {"b": 1, "KM_E2": -2}}}
    assert run_json(["cubic"], fab)["verdict"] == "INCONCLUSIVE-AT-THIS-ORDER"


@pytest.mark.parametrize(
    "argv,stdin,code",
    [
        (["compute", "--input", "-"], "{nope", 2),
        (["compute", "--input", "-"], '{"kind": "ambient", "d": 1, "weights": [0.5, 1]}', 2),
        (["compute", "--input", "-"], '{"kind": "ambient", "d": 1}', 2),
        (["compute"], "", 2),
        (["compute", "--input", "/nonexistent/spec.json"], "", 2),
        (["cubic", "--input", "-"], '{"model": "F_Delta", "numbers": {"p0": {"b": 1, "KM_E2": 0}}}', 2),
        (["verify", "--suite", "nope"], "", 2),
        (["frobnicate"], "", 2),
        (["expand", "--input", "-", "--depth", "-1"], "{}", 2),
    ],
)
def test_input_errors(argv, stdin, code):
    got, out, err = run(argv, stdin)
    assert got == code
    assert out == ""


def test_computation_error_exit_code(monkeypatch):
    def overflow(*args):
        raise DegreeOverflow("samples off the curve")

    monkeypatch.setattr("futaki.cli.run_compute", overflow)
    code, _, err = run(["compute", "--input", "-"], "{}")
    assert code == 3 and "DegreeOverflow" in err


def test_verify_suite_json_and_failure_code(monkeypatch):
    code, out, _ = run(["verify", "--suite", "decay"])
    report = json.loads(out)
    assert code == 0 and report["passed"] and all(c["criterion"] == 6 for c in report["checks"])

    from futaki.verify import Check

    monkeypatch.setattr("futaki.cli.run_suite", lambda name: [Check("broken", 0, False)])
    code, out, _ = run(["verify", "--suite", "decay", "--format", "text"])
    assert code == 1 and "[FAIL]" in out


def test_text_format():
    code, out, _ = run(["compute", "--input", "-", "--format", "text"], '{"kind": "ambient", "d": 1, "weights": [1, -1]}')
    assert code == 0 and "F1: 0" in out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "futaki", "compute", "--input", "-"],
        input='{"kind": "ambient", "d": 2, "weights": [1, 0, -1]}',
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["F1"] == "0"
