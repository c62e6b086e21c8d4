import io
import json
import subprocess
import sys

import pytest

from cychom import catalog
from cychom.cli import main, recheck_certificate


def run(argv, stdin=None, monkeypatch=None):
    out = io.StringIO()
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv, out=out)
    return code, out.getvalue()


def test_point_cohomology_default():
    code, text = run(["cohomology", "--max-degree", "4"])
    assert code == 0
    assert "dims: 1,0,1,0,1" in text and "verdict: pass" in text


def test_periodicity_default():
    code, text = run(["periodicity", "--m", "0", "--format", "json"])
    assert code == 0
    cert = json.loads(text)
    assert cert["verdict"] == "pass"
    assert cert["outputs"]["phi_lo"]["level"] == 0 and cert["outputs"]["witness"]["level"] == 1
    assert cert["inputs"]["document"]["fredholm"]


def test_malformed_literal_exit_2(tmp_path, capsys):
    doc = catalog.document("point")
    doc["category"]["compose"][0]["result"]["1"] = "1//2"
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, _ = run(["validate", str(path)])
    assert code == 2
    assert "/category/compose/0/result/1" in capsys.readouterr().err


def test_stdin_and_invalid_json(monkeypatch, capsys):
    code, _ = run(["validate", "-"], stdin=json.dumps(catalog.document("idem")), monkeypatch=monkeypatch)
    assert code == 0
    code, _ = run(["validate", "-"], stdin="{nope", monkeypatch=monkeypatch)
    assert code == 2


def test_unknown_builtin_and_missing_file(capsys):
    assert run(["validate", "--builtin", "nope"])[0] == 2
    assert run(["validate", "/nonexistent/file.json"])[0] == 2


def test_failed_validation_exit_1(tmp_path):
    doc = {"category": {"objects": ["X"], "homs": {"X|X": ["x", "y"]},
                        "compose": [{"g": "x", "f": "x", "result": {"y": "1"}},
                                    {"g": "y", "f": "x", "result": {"x": "1"}}]}}
    path = tmp_path / "nonassoc.json"
    path.write_text(json.dumps(doc))
    code, text = run(["validate", str(path)])
    assert code == 1 and "verdict: fail" in text


def test_adversarial_family_exit_1():
    code, text = run(["homotopy-family", "--m", "0", "--builtin", "family-adversarial", "--format", "json"])
    assert code == 1
    cert = json.loads(text)
    assert cert["outputs"]["error"] == "ClassesDiffer"
    assert cert["outputs"]["separating_functional"]["values"]


@pytest.mark.parametrize("argv", [
    ["validate", "--builtin", "s3-conj"],
    ["cohomology", "--max-degree", "3"],
    ["cohomology", "--max-degree", "3", "--kind", "hochschild", "--builtin", "idem"],
    ["cohomology", "--max-degree", "2", "--hopf"],
    ["cohomology", "--max-degree", "2", "--hopf", "--builtin", "z2-swap"],
    ["chern", "--m", "1"],
    ["periodicity", "--m", "0"],
    ["periodicity", "--m", "1"],
    ["morita", "--r", "2", "--max-degree", "2", "--builtin", "idem"],
    ["pairing"],
    ["pairing", "--hopf", "--p", "0", "--q", "2"],
    ["homotopy-family", "--m", "0"],
    ["homotopy-family", "--m", "0", "--builtin", "family-constant"],
])
def test_recheck_passes(argv):
    code, text = run(argv + ["--recheck", "--format", "json"])
    assert code == 0
    cert = json.loads(text)
    assert any(k.startswith("recheck: ") for k in cert["checks"])
    assert all(cert["checks"].values())
    # the stored certificate re-verifies on its own as well
    assert all(recheck_certificate(cert).values())


def test_determinism():
    for argv in (["morita", "--format", "json"], ["periodicity", "--m", "0"], ["cohomology", "--hopf"]):
        assert run(argv)[1] == run(argv)[1]


def test_timing_only_on_request():
    assert "time:" not in run(["cohomology"])[1]
    assert "time:" in run(["cohomology", "--timing"])[1]


def test_tampered_certificate_fails(tmp_path):
    code, text = run(["periodicity", "--m", "0", "--format", "json"])
    cert = json.loads(text)
    vals = cert["outputs"]["witness"]["values"]
    key = next(iter(vals))
    vals[key] = "7"
    path = tmp_path / "cert.json"
    path.write_text(json.dumps(cert))
    code, text = run(["recheck", str(path)])
    assert code == 1 and "FAIL" in text
    cert["inputs"]["document"]["fredholm"]["action"]["e"]["even"] = [["0"]]
    path.write_text(json.dumps(cert))
    code, text = run(["recheck", str(path)])
    assert code == 1 and "input digest: FAIL" in text


def test_user_cochains_for_pairing(tmp_path):
    doc = catalog.document("pairing-idem-point")
    doc["cochains"] = [{"level": 0, "values": {"e": "1"}},
                       {"level": 2, "on": "category2", "values": {"1|1|1": "1"}}]
    path = tmp_path / "pair.json"
    path.write_text(json.dumps(doc))
    code, text = run(["pairing", str(path), "--recheck"])
    assert code == 0 and "verdict: pass" in text


def test_nonnegative_parameters():
    assert run(["cohomology", "--max-degree", "-1"])[0] == 2


def test_size_limit(monkeypatch):
    monkeypatch.setenv("CYCHOM_BASIS_LIMIT", "5")
    assert run(["cohomology", "--max-degree", "3", "--builtin", "k3"])[0] == 2


def test_hopf_task_without_hopf():
    assert run(["cohomology", "--hopf", "--builtin", "point"])[0] == 2


def test_selftest():
    code, text = run(["selftest"])
    assert code == 0 and "FAIL" not in text


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cychom", "cohomology", "--max-degree", "4"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "dims: 1,0,1,0,1" in proc.stdout
    proc = subprocess.run([sys.executable, "-m", "cychom", "bogus"], capture_output=True, text=True)
    assert proc.returncode == 2
