from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from factorlab.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_invariants_json():
    code, text = run("invariants", "--gens", "2,3", "--format", "json")
    d = json.loads(text)
    assert code == 0 and d["schema"] == 1
    assert d["catenary"] == 3 and d["elasticity"] == {"num": 3, "den": 2}
    assert d["delta_min"] == 1 and d["tame"] == 3


def test_fiber_zero():
    code, text = run("fiber", "--gens", "2,3", "--element", "0", "--format", "json")
    assert code == 0 and json.loads(text)["factorizations"] == [[0, 0]]


def test_fiber_affine(tmp_path):
    f = tmp_path / "g.csv"
    f.write_text("2,0\n1,1\n0,2\n")
    code, text = run("fiber", "--gens-file", str(f), "--element", "2,2", "--format", "json")
    assert code == 0 and len(json.loads(text)["factorizations"]) == 2


def test_minimize_flag():
    _, text = run("betti", "--gens", "2,3,4", "--minimize", "--format", "json")
    assert json.loads(text)["generators"] == [2, 3]
    _, text = run("betti", "--gens", "2,4", "--format", "json")
    assert json.loads(text)["betti"] == [4]


def test_formats_render():
    for fmt in ("table", "csv"):
        code, text = run("atoms", "--gens", "6,9,20", "--format", fmt)
        assert code == 0 and "generators" in text


def test_verify_exit_zero():
    assert run("verify", "--gens", "2,4", "--bound", "20")[0] == 0


def test_verify_deterministic():
    a = run("verify", "--count", "3", "--seed", "7", "--format", "json")[1]
    b = run("verify", "--count", "3", "--seed", "7", "--format", "json")[1]
    assert a == b and json.loads(a)["passed"]


@pytest.mark.parametrize("argv,code", [
    (["fiber", "--gens", "2,3", "--element", "1"], 2),
    (["invariants", "--gens", "0,3"], 2),
    (["invariants"], 2),
    (["invariants", "--gens", "2,x"], 2),
    (["verify", "--gens", "6,9,20", "--bound", "10"], 2),
    (["bogus"], 2),
    (["verify", "--bound", "-1"], 2),
])
def test_usage_errors(argv, code):
    assert run(*argv)[0] == code


def test_resource_cap(monkeypatch):
    monkeypatch.setenv("FACTORLAB_CAP", "fiber=3")
    assert run("fiber", "--gens", "2,3", "--element", "30")[0] == 3


def test_transfer_commands(tmp_path):
    assert run("transfer", "--gens", "2,3", "--partition", "1|2", "--target-gens", "2,3")[0] == 0
    assert run("transfer", "--gens", "2,3", "--partition", "1,2", "--target-gens", "1")[0] == 1
    f = tmp_path / "s.csv"
    f.write_text("4,0\n4,1\n5,1\n5,3\n")
    code, text = run("transfer", "--gens-file", str(f), "--partition", "1,2|3,4",
                     "--target-gens", "4,5", "--format", "json")
    assert code == 1 and "assertion_failed" in json.loads(text)


def test_batch(tmp_path):
    f = tmp_path / "b.txt"
    f.write_text("2,3\n0,5\n6,9,20\n")
    code, text = run("batch", str(f))
    rows = text.strip().splitlines()
    assert code == 0 and len(rows) == 4
    assert "ZeroGenerator" in rows[2] and rows[3].startswith("3,6 9 20,7,")
    code, text = run("batch", "--random", "3", "--seed", "1", "--command", "verify", "--jobs", "2")
    assert code == 0 and text.count("True") == 3


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "factorlab", "invariants", "--gens", "2,3"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "catenary" in r.stdout
