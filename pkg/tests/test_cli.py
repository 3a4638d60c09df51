from __future__ import annotations

import io
import json
import subprocess
import sys
from pathlib import Path

from qcpaul.cli import report_json, run

CIRCUITS = Path(__file__).resolve().parent.parent / "circuits"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_usage_errors_exit_2():
    code, _, err = call("frobnicate")
    assert code == 2 and "usage" in err.lower()
    for argv in (["verify"], ["verify", "--id", "no.such"], ["eval", "/nonexistent.qc"],
                 ["qft", "--nb", "0"], ["verify", "--all", "--tol", "-1"],
                 ["verify", "--all", "--seed", "xyz"]):
        code, _, err = call(*argv)
        assert code == 2, argv


def test_errors_go_to_stderr():
    code, out, err = call("verify", "--id", "no.such")
    assert code == 2 and out == "" and err.startswith("qcpaul: error:")


def test_parse_error_exit_2(tmp_path):
    bad = tmp_path / "bad.qc"
    bad.write_text("wires: a\nFOO a\n")
    code, _, err = call("eval", str(bad))
    assert code == 2 and "bad.qc" in err


def test_verify_single_text():
    code, out, _ = call("verify", "--id", "pauli.anticommute")
    assert code == 0
    assert out.splitlines()[0].startswith("PASS  pauli.anticommute")


def test_verify_json_key_order_and_stability():
    code, a, _ = call("verify", "--all", "--json")
    _, b, _ = call("verify", "--all", "--json", "--jobs", "4")
    assert code == 0 and a == b
    doc = json.loads(a)
    assert list(doc) == ["tolerance", "seed", "results", "all_pass"]
    assert list(doc["results"][0]) == ["id", "citation", "points", "max_deviation", "pass", "ms"]
    assert doc["all_pass"] is True and doc["seed"] == 0xC0FFEE
    assert all(r["ms"] is None for r in doc["results"])


def test_timing_fills_ms():
    _, out, _ = call("verify", "--id", "had.self-inverse", "--json", "--timing")
    assert isinstance(json.loads(out)["results"][0]["ms"], float)


def test_tolerance_precedence(monkeypatch):
    monkeypatch.setenv("QCPAUL_TOL", "1e-6")
    _, out, _ = call("verify", "--id", "had.self-inverse", "--json")
    assert json.loads(out)["tolerance"] == 1e-6
    _, out, _ = call("verify", "--id", "had.self-inverse", "--json", "--tol", "1e-3")
    assert json.loads(out)["tolerance"] == 1e-3
    monkeypatch.setenv("QCPAUL_TOL", "lots")
    assert call("verify", "--id", "had.self-inverse")[0] == 2
    monkeypatch.delenv("QCPAUL_TOL")
    _, out, _ = call("verify", "--id", "had.self-inverse", "--json")
    assert json.loads(out)["tolerance"] == 1e-10


def test_seed_accepts_hex():
    _, out, _ = call("verify", "--id", "gen.ctrl-u-decomp", "--json", "--seed", "0x10")
    assert json.loads(out)["seed"] == 16


def test_failure_exit_1():
    code, out, _ = call("verify", "--id", "gen.ctrl-u-decomp", "--tol", "0")
    assert code in (0, 1)
    assert ("FAIL" in out) == (code == 1)


def test_report_json_empty():
    doc = json.loads(report_json([]))
    assert doc["results"] == [] and doc["all_pass"] is True


def test_list():
    code, out, _ = call("list", "identities")
    assert code == 0 and len(out.splitlines()) >= 50
    code, out, _ = call("list", "rules", "--json")
    assert code == 0 and any(r["id"] == "wake-chain" for r in json.loads(out))


def test_eval_bell_json():
    code, out, _ = call("eval", str(CIRCUITS / "bell.qc"), "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["in_wires"] == [] and doc["out_wires"] == ["a", "b"]
    col = [complex(*z[0] if isinstance(z[0], list) else z) for row in doc["matrix"] for z in row]
    assert abs(col[0] - 2 ** -0.5) < 1e-12 and abs(col[3] - 2 ** -0.5) < 1e-12


def test_eval_ghz_xyy_text():
    code, out, _ = call("eval", str(CIRCUITS / "ghz_xyy.qc"))
    assert code == 0 and "-1.000000" in out


def test_rewrite_json():
    code, out, _ = call("rewrite", str(CIRCUITS / "chain.qc"), "--rule", "wake-chain", "--at", "0",
                        "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["pass"] is True and doc["circuit"].startswith("wires:")
    code, _, err = call("rewrite", str(CIRCUITS / "chain.qc"), "--rule", "wake-chain", "--at", "5")
    assert code == 2 and "does not match" in err
    code, _, _ = call("rewrite", str(CIRCUITS / "chain.qc"), "--rule", "nope", "--at", "0")
    assert code == 2


def test_rewrite_text_parses_back():
    from qcpaul.dsl import parse
    code, out, _ = call("rewrite", str(CIRCUITS / "toffoli.qc"), "--rule", "reduce-control",
                        "--at", "0")
    assert code == 0 and len(parse(out).elements) == 5


def test_qft_check():
    code, out, _ = call("qft", "--nb", "4", "--check")
    assert code == 0 and out.rstrip().splitlines()[-1].startswith("# check: circuit equals")
    code, out, _ = call("qft", "--nb", "3", "--form", "321", "--reversal", "all-pairs", "--json",
                        "--check")
    doc = json.loads(out)
    assert doc["check"]["pass"] and doc["counts"] == {"H": 3, "V": 3, "E": 3}


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qcpaul", "verify", "--id", "had.self-inverse"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "PASS" in proc.stdout
    proc = subprocess.run([sys.executable, "-m", "qcpaul"], capture_output=True, text=True)
    assert proc.returncode == 2 and "usage" in proc.stderr
