import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from cpair.cli import main

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def run_cli(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.mark.parametrize("name, code", [
    ("paquerette.cp", 0), ("curves.cp", 0), ("cyclic.cp", 0),
    ("paquerette-local.cp", 1), ("three-lines.cp", 1), ("line-blowup.cp", 1),
])
def test_exit_codes(name, code):
    assert run_cli("check", str(SAMPLES / name))[0] == code


def test_json_schema():
    code, text = run_cli("check", "--json", str(SAMPLES / "paquerette-local.cp"))
    report = json.loads(text)
    assert code == 1
    assert set(report) == {"version", "file", "checks", "summary"}
    assert report["version"] == 1
    assert report["summary"] == {"checks": 2, "pass": 1, "fail": 1, "error": 0, "info": 0}
    for check in report["checks"]:
        assert set(check) == {"index", "line", "kind", "args", "verdict", "witnesses", "data", "error"}
        assert check["verdict"] in ("pass", "fail", "info", "error")
    local = report["checks"][1]
    assert local["kind"] == "local-orbifold" and local["args"] == ["pi"]
    assert {"source": "E", "target": "P2", "lhs": "1", "rhs": "3"} in local["witnesses"]


def test_output_is_deterministic():
    path = str(SAMPLES / "plane.cp")
    assert run_cli("check", "--json", path) == run_cli("check", "--json", path)
    assert run_cli("check", path) == run_cli("check", path)


def test_text_report():
    code, text = run_cli("check", str(SAMPLES / "line-blowup.cp"))
    assert "check orbifold phi ... FAIL" in text
    assert text.rstrip().endswith("2 checks: 1 passed, 1 failed, 0 errors, 0 informational")


def test_parse_error(tmp_path, capsys):
    bad = tmp_path / "bad.cp"
    bad.write_text("pair Y { (1/3) P }\n")
    code, text = run_cli("check", str(bad))
    assert code == 2 and text == ""
    assert f"{bad}:1:10: NotStandardCoefficient" in capsys.readouterr().err
    code, text = run_cli("check", "--json", str(bad))
    report = json.loads(text)
    assert code == 2
    assert report["error"] == {"type": "NotStandardCoefficient", "line": 1, "column": 10,
                               "message": "coefficient 1/3 is not of the form (m-1)/m"}


def test_missing_file(tmp_path):
    assert run_cli("check", str(tmp_path / "absent.cp"))[0] == 2
    assert run_cli("fmt", str(tmp_path / "absent.cp"))[0] == 2


def test_check_errors_and_strict():
    path = str(SAMPLES / "plane.cp")
    code, text = run_cli("check", "--json", "--max-tensors", "1", path)
    report = json.loads(text)
    assert code == 2
    assert report["summary"]["checks"] == 7 and report["summary"]["error"] == 3
    code, text = run_cli("check", "--json", "--strict", "--max-tensors", "1", path)
    report = json.loads(text)
    assert code == 2
    assert report["checks"][-1]["error"]["type"] == "EnumerationLimitExceeded"
    assert report["summary"]["checks"] == 3


def test_max_tensors_validated(capsys):
    with pytest.raises(SystemExit):
        main(["check", "--max-tensors", "0", str(SAMPLES / "plane.cp")])


def test_sweep_uses_seed(tmp_path):
    doc = tmp_path / "sweep.cp"
    doc.write_text("check sweep oracle 30\n")
    a = json.loads(run_cli("check", "--json", "--seed", "5", str(doc))[1])
    b = json.loads(run_cli("check", "--json", "--seed", "5", str(doc))[1])
    c = json.loads(run_cli("check", "--json", "--seed", "6", str(doc))[1])
    assert a == b
    assert a["checks"][0]["verdict"] == "pass"
    assert a["checks"][0]["data"]["seed"] != c["checks"][0]["data"]["seed"]


def test_fmt_is_idempotent(tmp_path):
    code, once = run_cli("fmt", str(SAMPLES / "three-lines.cp"))
    assert code == 0 and "pair Y { m=3 D1 ; m=3 D2 ; m=2 D3 }" in once
    path = tmp_path / "canon.cp"
    path.write_text(once)
    assert run_cli("fmt", str(path)) == (0, once)


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "cpair.cli", "check", str(SAMPLES / "paquerette.cp")],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "PASS" in proc.stdout
