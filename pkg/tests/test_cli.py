import json
import subprocess
import sys

import pytest

from idealtop.cli import main


def _write(path, doc):
    path.write_text(json.dumps(doc))
    return str(path)


@pytest.fixture
def files(tmp_path):
    return {
        "s2": _write(tmp_path / "s2.json", {"points": ["a", "b"], "opens": [[], [0], [0, 1]]}),
        "indiscrete": _write(tmp_path / "ind.json", {"points": ["a", "b"], "opens": [[], [0, 1]]}),
        "p": _write(tmp_path / "p.json", {"principal": [0]}),
        "semi": _write(tmp_path / "semi.json", {"generators": [[0], [1]]}),
        "big": _write(tmp_path / "big.json", {"principal": [4]}),
        "no_full": _write(tmp_path / "bad.json", {"points": ["a", "b"], "opens": [[], [0]]}),
    }


def test_analyze_s2(files, capsys):
    assert main(["analyze", "--space", files["s2"], "--ideal", files["p"]]) == 0
    out = capsys.readouterr().out
    assert "σ     {∅, {b}, {a,b}}" in out
    assert "laws: 0 violations" in out


def test_analyze_semi(files, capsys):
    assert main(["analyze", "--space", files["indiscrete"], "--ideal", files["semi"]]) == 0
    out = capsys.readouterr().out
    assert "STAR4" in out and "GAMMA3" in out
    assert "inclusion theorems: skipped" in out


def test_analyze_json_is_stable(files, capsys):
    args = ["analyze", "--space", files["s2"], "--ideal", files["p"], "--format", "json"]
    main(args)
    first = capsys.readouterr().out
    main(args)
    assert capsys.readouterr().out == first
    assert json.loads(first)["topologies"]["sigma"] == [[], [1], [0, 1]]


def test_analyze_input_errors(files, capsys):
    assert main(["analyze", "--space", files["no_full"], "--ideal", files["p"]]) == 2
    assert "NotATopology" in capsys.readouterr().err
    assert main(["analyze", "--space", files["s2"], "--ideal", files["big"]]) == 2
    assert "GroundSetMismatch" in capsys.readouterr().err
    assert main(["analyze", "--space", "/nonexistent.json", "--ideal", files["p"]]) == 2
    assert main(["analyze"]) == 2


def test_sweep_principal(tmp_path, capsys):
    out = tmp_path / "v.jsonl"
    assert main(["sweep", "--max-points", "3", "--out", str(out)]) == 0
    captured = capsys.readouterr()
    assert captured.out.strip() == "232 instances (29 spaces × 8 ideals), 0 violations"
    assert "wall time" in captured.err
    assert out.read_text() == ""


def test_sweep_semi_replays(tmp_path, capsys):
    out = tmp_path / "v.jsonl"
    assert main(["sweep", "--max-points", "2", "--ideal-mode", "semi", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert any(json.loads(line)["law"] == "STAR4" for line in lines)
    capsys.readouterr()
    assert main(["verify", str(out)]) == 0
    assert f"{len(lines)} replayed, 0 failed" in capsys.readouterr().out


def test_verify_detects_tampering(tmp_path, capsys):
    out = tmp_path / "v.jsonl"
    main(["sweep", "--max-points", "2", "--ideal-mode", "semi", "--out", str(out)])
    doc = json.loads(out.read_text().splitlines()[0])
    doc["ideal"] = {"principal": []}
    bad = tmp_path / "bad.jsonl"
    bad.write_text(json.dumps(doc) + "\n")
    assert main(["verify", str(bad)]) == 1


def test_sweep_capacity(capsys):
    assert main(["sweep", "--max-points", "6"]) == 2
    assert "CapacityExceeded" in capsys.readouterr().err


def test_witness_commands(tmp_path, capsys):
    out = tmp_path / "w.jsonl"
    assert main(["witness", "--from", "sigma", "--notin", "tau_theta_omega", "--out", str(out)]) == 0
    record = json.loads(out.read_text())
    assert record["kind"] == "witness" and record["replay"]
    assert len(record["space"]["points"]) == 2
    assert main(["verify", str(out)]) == 0
    capsys.readouterr()
    assert main(["witness", "--from", "tau_omega", "--notin", "tau_star", "--max-points", "3"]) == 0
    record = json.loads(capsys.readouterr().out)
    assert record["kind"] == "none"
    assert main(["witness", "--from", "sigma", "--notin", "rho"]) == 2


def test_dot_from_report(tmp_path, capsys):
    rep = tmp_path / "r.json"
    main(["sweep", "--max-points", "3", "--min-points", "1", "--report", str(rep)])
    capsys.readouterr()
    assert main(["dot", str(rep)]) == 0
    assert "τ_ω = τ*" in capsys.readouterr().out
    broken = tmp_path / "broken.json"
    broken.write_text("{")
    assert main(["dot", str(broken)]) == 2
    broken.write_text('{"pairs": []}')
    assert main(["dot", str(broken)]) == 2


def test_selftest_command(capsys):
    assert main(["selftest"]) == 0
    assert capsys.readouterr().out.count("PASS") == 4


def test_module_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "idealtop", "analyze", "--space", files["s2"], "--ideal", files["p"]],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and "laws: 0 violations" in proc.stdout
