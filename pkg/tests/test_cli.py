from __future__ import annotations

import json
import subprocess
import sys

import pytest

from arboreal import __version__
from arboreal.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, run
from arboreal.curves_verify import fixture_dir


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def manifest_of(out: str) -> dict:
    if out.startswith("# manifest: "):
        return json.loads(out.splitlines()[0].removeprefix("# manifest: "))
    return json.loads(out)["manifest"]


def test_atlas_contains_eisenstein_row(capsys):
    code, out, err = call(capsys, "atlas", "--dmax", "6")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[1] == "D,c,d,pcf,witness"
    assert any(l.startswith("-3,-1/2 + 1/2*sqrt(-3),6,1,periodic") for l in lines), [l for l in lines if ",6,1," in l]
    assert "wall time" in err


def test_onedim_nonabelian(capsys):
    code, out, _ = call(capsys, "onedim", "--map", "x^2+i", "--alpha", "1", "--p", "2")
    assert code == EXIT_OK
    assert json.loads(out)["certificate"]["verdict"] == "NonAbelianSpan"


def test_verify_appendix_passes(capsys):
    code, out, _ = call(capsys, "verify-appendix")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["ok"] and len(data["curves"]) == 27
    alphas = {d["alpha"] for d in data["alpha_derivations"]}
    assert {"sqrt(-1)", "-7/8 + 9/8*sqrt(-1)", "-5/8 + 67/32*sqrt(-1)", "-1 - sqrt(-1)"} <= alphas
    assert "completeness" in data["scope"]


def test_verify_appendix_failure_exit(capsys, tmp_path):
    obj = json.loads((fixture_dir() / "E_A.json").read_text())
    obj["points"].append(["1", "1"])
    (tmp_path / "E_A.json").write_text(json.dumps(obj))
    code, out, _ = call(capsys, "verify-appendix", "--fixtures", str(tmp_path), "--format", "table")
    assert code == EXIT_FAIL
    assert "FAIL (1)" in out


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["orbit"],
        ["orbit", "--map", "x^2 + x"],
        ["orbit", "--map", "x^2+i", "--n", "many"],
        ["onedim", "--map", "x^2+i", "--alpha", "1", "--p", "3"],
        ["onedim", "--map", "x^3+i", "--alpha", "2", "--p", "3"],
        ["orbit", "--map", "x^2+i", "--alpha", "zeta3"],
        ["tree-check", "--shape", "2,1"],
        ["tree-check", "--shape", "2,2", "--level", "5"],
        ["atlas", "--dmax", "1"],
        ["bounds-sweep", "--kmax", "1"],
        ["pcf", "--map", "2*x^2+1"],
        ["enumerate-s", "--format", "xml"],
    ],
)
def test_usage_errors(capsys, argv):
    code, out, err = call(capsys, *argv)
    assert code == EXIT_USAGE
    assert out == "" and "arboreal" in err


def test_budget_overflow_is_failure(capsys):
    code, _, err = call(capsys, "tree-check", "--shape", "3,5", "--p", "3")
    assert code == EXIT_FAIL and "budget" in err.lower()


def test_tree_check(capsys):
    code, out, _ = call(capsys, "tree-check", "--shape", "2,2,2", "--level", "2")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["ok"] and data["manifest"]["flags"]["shape"] == [2, 2, 2]


@pytest.mark.parametrize(
    "argv",
    [
        ["orbit", "--map", "x^2+i", "--n", "6"],
        ["orbit", "--map", "x^2+i", "--alpha", "(9i-7)/8", "--n", "3", "--format", "table"],
        ["pcf", "--map", "x^6+zeta3"],
        ["onedim", "--map", "x^2+i", "--alpha", "(9i-7)/8", "--p", "2", "--n", "3"],
        ["atlas", "--dmax", "3", "--format", "json"],
        ["bounds-sweep", "--kmax", "40"],
        ["enumerate-s", "--format", "csv"],
        ["tree-check", "--shape", "2,3"],
    ],
)
def test_deterministic_and_round_trip(capsys, argv):
    code1, out1, _ = call(capsys, *argv)
    code2, out2, _ = call(capsys, *argv)
    assert code1 == code2 == EXIT_OK
    assert out1 == out2
    m = manifest_of(out1)
    assert m["version"] == __version__ and m["argv"] == argv
    code3, out3, _ = call(capsys, *m["argv"])
    assert out3 == out1
    assert m["subcommand"] == argv[0]


def test_report_contents(capsys):
    _, out, _ = call(capsys, "orbit", "--map", "x^2+1", "--n", "6")
    orbit = json.loads(out)["orbit"]
    assert orbit["status"]["kind"] == "escaped" and orbit["status"]["index"] == 3
    _, out, _ = call(capsys, "pcf", "--map", "x^6+zeta3")
    assert json.loads(out)["pcf"] is True
    _, out, _ = call(capsys, "bounds-sweep", "--kmax", "40", "--format", "json")
    assert json.loads(out)["max_true_k"] == 36
    _, out, _ = call(capsys, "enumerate-s")
    data = json.loads(out)
    assert len(data["representatives"]) == 31 and data["count_with_conjugates"] == 57


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "arboreal.cli", "onedim", "--map", "x^2+i", "--alpha", "1", "--p", "2"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["certificate"]["verdict"] == "NonAbelianSpan"
    proc = subprocess.run([sys.executable, "-m", "arboreal.cli", "nope"], capture_output=True, text=True)
    assert proc.returncode == 2
