import io
import json
import subprocess
import sys

import pytest

from albert import cli

NU2 = {"command": "nu2", "payload": {"a": 1, "z": [1, 2]}}


def feed(monkeypatch, capsys, lines, *argv):
    monkeypatch.setattr(sys, "stdin", io.StringIO("".join(l + "\n" for l in lines)))
    code = cli.main(list(argv))
    out = capsys.readouterr().out.splitlines()
    return code, [json.loads(l) for l in out]


def test_nu2_request():
    report, code = cli.run(NU2)
    assert code == 0 and report["status"] == "ok"
    assert report["output"]["rows"] == [["1", "2"], ["2", "4"]]
    assert "elapsed_s" not in report


def test_classify_request():
    pencil = [[["0", "1", "0", "0", "0"], ["-1", "0", "0", "0", "0"]] + [["0"] * 5] * 3,
              [["0"] * 5] * 5]
    report, code = cli.run({"command": "classify-pencil", "payload": pencil})
    assert code == 0 and report["output"] == {"label": "2A1", "dim": 8}
    report, _ = cli.run({"command": "classify-pencil", "payload": [[["0"] * 5] * 5] * 2})
    assert report["output"] == {"label": "A1", "dim": 0}


@pytest.mark.parametrize("request_doc", [
    {"command": "no-such-thing", "payload": {}},
    {"command": "nu2"},
    {"command": "nu2", "payload": {"a": 3, "z": [1]}},
    {"command": "nu2", "payload": {"a": 1, "z": [1.5]}},
    {"command": "nu2", "payload": {"a": 1, "z": [1]}, "seed": "x"},
    {"command": "verify", "payload": "nonsense"},
    [1, 2],
])
def test_malformed_requests_exit_one(request_doc):
    report, code = cli.run(request_doc)
    assert code == 1 and report["status"] == "malformed" and report["error"]


def test_precondition_exits_two():
    tangent = {"n": 3, "a": 1, "diag": ["0", "1", "0"], "upper": []}
    x = {"n": 3, "a": 1, "diag": ["1", "0", "0"], "upper": []}
    report, code = cli.run({"command": "nu-plus", "payload": {"x": x, "t": tangent}})
    assert code == 2 and report["status"] == "precondition"


def test_failed_verification_exits_three(monkeypatch):
    monkeypatch.setattr(cli, "verify", lambda suite, seed: {"suite": suite, "passed": False, "checks": []})
    report, code = cli.run({"command": "verify", "payload": "compalg"})
    assert code == 3 and report["status"] == "failed"


def test_verify_spelled_in_command():
    report, code = cli.run({"command": "verify compalg"})
    assert code == 0 and report["output"]["suite"] == "compalg" and report["output"]["passed"]


def test_field_and_timing():
    report, _ = cli.run(NU2, timing=True)
    assert report["elapsed_s"] >= 0
    report, _ = cli.run({**NU2, "field": "Fp:7", "payload": {"a": 1, "z": [3, 5]}})
    assert report["field"] == "Fp:7" and report["output"]["diag"] == ["2", "4"]
    report, code = cli.run({**NU2, "field": "Fp:8"})
    assert code == 1


def test_main_streams_and_takes_the_worst_code(monkeypatch, capsys, tmp_path):
    lines = [json.dumps(NU2), "{not json", json.dumps({"command": "verify", "payload": "x"})]
    code, reports = feed(monkeypatch, capsys, lines, "--report-dir", str(tmp_path))
    assert code == 1
    assert [r["status"] for r in reports] == ["ok", "malformed", "malformed"]
    assert sorted(p.name for p in tmp_path.iterdir()) == [
        "0000-nu2.json", "0001-invalid.json", "0002-verify.json"]


def test_main_suite(monkeypatch, capsys, tmp_path):
    code, reports = feed(monkeypatch, capsys, [], "--suite", "compalg", "--seed", "3",
                         "--report-dir", str(tmp_path))
    assert code == 0 and reports[0]["output"]["passed"] and reports[0]["seed"] == 3
    assert (tmp_path / "verify-compalg-3.json").exists()


def test_main_rejects_bad_field(monkeypatch, capsys):
    code, _ = feed(monkeypatch, capsys, [json.dumps(NU2)], "--field", "R")
    assert code == 1


def test_subprocess_output_is_byte_identical():
    lines = "\n".join([json.dumps(NU2), json.dumps({"command": "verify compalg", "seed": 5})]) + "\n"
    runs = [subprocess.run([sys.executable, "-m", "albert.cli", "--field", "Fp:10007"],
                           input=lines, capture_output=True, text=True, check=True).stdout
            for _ in range(2)]
    assert runs[0] == runs[1] and len(runs[0].splitlines()) == 2
