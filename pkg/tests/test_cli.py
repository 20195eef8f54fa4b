import json
import subprocess
import sys

import pytest

from qpnkit.cli import bundled_script, main
from qpnkit.cli.parser import ParseError, ScriptNameError, parse, render


def run_cli(tmp_path, capsys, text, *args):
    path = tmp_path / "s.qpk"
    path.write_text(text, encoding="utf-8")
    code = main(["run", str(path), *args])
    out = capsys.readouterr().out
    return code, [json.loads(line) for line in out.splitlines() if line.strip()]


HEADER = "field F = Q\nring S = F[x0..x1]\n"


def test_smallest_script_parses():
    script = parse("field F = GF(7)\nring S = F[x0..x1]\n")
    assert len(script.declarations) == 2
    assert script.declarations[1].n + 1 == 2


def test_parse_error_position():
    with pytest.raises(ParseError) as exc:
        parse("field F = Q\nring S = F[x0..x1\n")
    assert exc.value.line == 2
    assert exc.value.column == 18


def test_undeclared_name():
    with pytest.raises(ScriptNameError) as exc:
        parse(HEADER + "hilbert X 0 3\n")
    assert exc.value.name == "X"


def test_type_mismatch_is_a_name_error():
    with pytest.raises(ScriptNameError) as exc:
        parse(HEADER + "free A = S(0)\nhilbert A 0 3\ngood-epi A\n")
    assert exc.value.name == "A"


def test_degree_error_reported_with_position(tmp_path, capsys):
    text = HEADER + "free A = S(0)\nfree B = S(0) + S(1)\nmatrix M : A -> B = [[1], [x0^2]]\n"
    code, records = run_cli(tmp_path, capsys, text)
    assert code == 2
    err = records[0]["error"]
    assert err["kind"] == "DegreeError"
    assert (err["detail"]["row"], err["detail"]["col"]) == (1, 0)


CORPUS = [
    "",
    HEADER,
    HEADER + "free G = S(0) + S(0)\nfree R = S(-1)\nmatrix K : R -> G = [[-x1], [x0]]\n"
             "module X = coker K\nhilbert X -1 4\nsym X 2\n",
    HEADER + "free L = S(1)\nmodule Y = L\nphi-extend 0 1 Y [[x0, x1]]\n",
    "field Q = Q\ntarget T = Q[t]\nsections s over T = (1, t)\ngood-epi s\nreconstruct s\n"
    "trunc-iso s 1 0\n",
    "field Q = Q\ntarget D = algebra(Q, 2, 1, 0, 0, 1, 0, 1, 0, 0)\n"
    "sections e over D = ([0, 1], [1, 1])\ngood-epi e\n",
    "field Q = Q\ntarget T = Q[t]\ntarget K = Q\nringmap ev : T -> K = (0)\n"
    "tmodule M over T = [[t^2]]\nbase-change ev M\n",
    "field F7 = GF(7)\ntrunc 2 1 1 over F7\nmonomials 2 3\n",
]


@pytest.mark.parametrize("text", CORPUS)
def test_parse_render_roundtrip(text):
    script = parse(text)
    again = parse(render(script))
    assert again.same_as(script)
    assert render(again) == render(script)


def test_bundled_script_roundtrip():
    script = parse(bundled_script())
    assert parse(render(script)).same_as(script)


def test_crlf_and_comments():
    a = parse("field F = Q   # the rationals\r\nring S = F[x0..x1]\r\n")
    b = parse(HEADER)
    assert a.same_as(b)


def test_empty_script_exit_zero(tmp_path, capsys):
    code, records = run_cli(tmp_path, capsys, "")
    assert code == 0 and records == []


def test_trunc_then_exact(tmp_path, capsys):
    text = HEADER + ("free G = S(0) + S(0)\nfree R = S(-1)\nfree L = S(1)\n"
                     "matrix K : R -> G = [[-x1], [x0]]\nmatrix I : G -> L = [[x0, x1]]\n"
                     "trunc 1 0 1 over F\nexact K I -1 6\n")
    code, records = run_cli(tmp_path, capsys, text)
    assert code == 0
    for rec in records:
        assert rec["verdict"] == "pass"
        assert rec["window"] == [-1, 6]
        deg1 = [row for row in rec["table"] if row["degree"] == 1][0]
        assert (deg1["dim"], deg1["image"], deg1["kernel"]) == (4, 1, 1)


def test_good_epi_not_epi_record(tmp_path, capsys):
    text = "field Q = Q\ntarget T = Q[t]\nsections s over T = (t, t^2)\ngood-epi s\n"
    code, records = run_cli(tmp_path, capsys, text)
    assert code == 1
    assert records == [{"command": "good-epi", "inputs": ["s"], "verdict": "not_epi",
                        "witness": {"gcd": "t"}}]


def test_incompatible_tuple_witness(tmp_path, capsys):
    text = HEADER + "free L = S(1)\nmodule Y = L\nphi-extend 0 1 Y [[x1, x0]]\n"
    code, records = run_cli(tmp_path, capsys, text)
    assert code == 1
    assert records[0]["verdict"] == "incompatible"
    assert records[0]["witness"] == {"q": [0, 0], "i": 0, "j": 1}


def test_failing_exactness_exit_one(tmp_path, capsys):
    # dropping the relation leaves the sequence inexact in degree 1
    text = HEADER + ("free G = S(0) + S(0)\nfree R = S(-1)\nfree L = S(1)\n"
                     "matrix K : R -> G = [[0], [0]]\nmatrix I : G -> L = [[x0, x1]]\nexact K I -1 3\n")
    code, records = run_cli(tmp_path, capsys, text)
    assert code == 1
    assert records[0]["verdict"] == "fail"
    assert records[0]["witness"]["degree"] == 1


def test_window_override(tmp_path, capsys):
    code, records = run_cli(tmp_path, capsys, HEADER + "trunc 1 0 1 over F\n", "--window", "0:2")
    assert code == 0 and records[0]["window"] == [0, 2]


def test_usage_error_exit_two(capsys):
    assert main(["run", "/nonexistent/script.qpk"]) == 2


def test_bundled_script_passes(capsys):
    assert main(["run", "@acceptance", "--seed", "0"]) == 0


def test_module_entry_point_is_deterministic():
    cmd = [sys.executable, "-m", "qpnkit", "run", "@acceptance", "--seed", "3"]
    a = subprocess.run(cmd, capture_output=True, check=False)
    b = subprocess.run(cmd, capture_output=True, check=False)
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout and a.stdout
