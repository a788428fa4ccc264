import json
import subprocess
import sys


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "twistedcubic", *args],
        capture_output=True, text=True)


def test_classify_json_stdout():
    res = run_cli("classify", "--q", "5")
    assert res.returncode == 0
    doc = json.loads(res.stdout)
    assert doc["lines"]["EnG"] == 480
    assert doc["planes"]["gamma"] == 6


def test_classify_csv_out(tmp_path):
    out = tmp_path / "counts.csv"
    res = run_cli("classify", "--q", "5", "--format", "csv", "--out", str(out))
    assert res.returncode == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "q,kind,class,count"
    assert "5,line,EnG,480" in lines
    assert "5,plane,gamma,6" in lines


def test_orbits_with_class_filter():
    res = run_cli("orbits", "--q", "8", "--class", "UG")
    assert res.returncode == 0
    doc = json.loads(res.stdout)
    (entry,) = doc["classes"]
    assert sorted(o["size"] for o in entry["orbits"]) == [9, 63]


def test_stabilizer_by_line():
    res = run_cli("stabilizer", "--q", "5", "--line", "0,0,1,0,0,0", "--elements")
    assert res.returncode == 0
    doc = json.loads(res.stdout)
    (entry,) = doc["stabilizers"]
    assert entry["class"] == "RC"
    assert entry["stabilizer_order"] == 8
    assert [1, 0, 0, 1] in entry["elements"]


def test_verify_pass_lines_and_exit_zero(tmp_path):
    out = tmp_path / "report.json"
    res = run_cli("verify", "--q", "5", "--out", str(out))
    assert res.returncode == 0
    assert "PASS class_size:RC" in res.stdout
    assert "all checks passed" in res.stdout
    report = json.loads(out.read_text())
    assert report["pass"] is True
    assert report["meta"]["q"] == 5


def test_census_document_and_determinism(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    assert run_cli("census", "--q", "5", "--out", str(a)).returncode == 0
    assert run_cli("census", "--q", "5", "--out", str(b)).returncode == 0
    assert a.read_bytes() == b.read_bytes()


def test_census_csv():
    res = run_cli("census", "--q", "5", "--format", "csv")
    assert res.returncode == 0
    assert res.stdout.splitlines()[0] == "q,class,orbit_length,multiplicity,stabilizer_order"


def test_unsupported_q_exit_code():
    res = run_cli("verify", "--q", "6")
    assert res.returncode == 2
    assert "not supported" in res.stderr


def test_long_run_gate():
    res = run_cli("verify", "--q", "64")
    assert res.returncode == 2
    assert "--long-run" in res.stderr


def test_bad_modulus_exit_code():
    res = run_cli("classify", "--q", "4", "--modulus", "0,1,1")
    assert res.returncode == 2


def test_unpopulated_class_exit_code():
    res = run_cli("stabilizer", "--q", "5", "--class", "EA")
    assert res.returncode == 2
    assert "not populated" in res.stderr
    res = run_cli("orbits", "--q", "5", "--class", "EA")
    assert res.returncode == 2


def test_threads_flag_recorded():
    res = run_cli("census", "--q", "5", "--threads", "4")
    assert res.returncode == 0
    assert json.loads(res.stdout)["meta"]["threads"] == 4
