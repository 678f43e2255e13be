import json
import shutil
import subprocess

import pytest

from conftest import data
from semiab.cli import main, run_command
from semiab.corpus import SUITES, gen_surjection, register_suite


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return json.loads(out), code, out


@pytest.mark.parametrize("argv,expected", [
    (["group", "check", "Z4"], {"valid": True, "order": 4, "abelian": True}),
    (["baer", "nilpotency", "D8", "--max", "3"], {"series": [8, 2, 1], "class": 2}),
    (["ext", "h2", "--base", "Z2", "--coeff", "Z2"], {"invariantFactors": [2]}),
])
def test_documented_outputs(capsys, argv, expected):
    rep, code, _ = run(capsys, *argv)
    assert rep == expected and code == 0


def test_provenance_flag(capsys):
    rep, code, _ = run(capsys, "group", "check", "Z4", "--provenance")
    assert rep["checked"] and code == 0


@pytest.mark.parametrize("argv", [
    ["snake", data("snake.json")], ["diagram", "snake", data("snake.json")],
    ["chain", "homology", data("complex.json"), "--degree", "1"],
    ["simp", "homology", data("tower.json")], ["simp", "fill", data("tower.json")],
    ["simp", "fib", data("tower.json")], ["simp", "acyclic", data("tower.json")],
    ["simp", "moore", data("tower.json")], ["simp", "pi1", data("tower3.json")],
    ["xmod", "check", data("xmod.json")], ["xmod", "homology", data("xmod.json")],
    ["xmod", "nerve", data("xmod.json")], ["xmod", "roundtrip", data("xmod.json")],
    ["xmod", "predicates", data("xmod_morphism.json")],
    ["group", "check", "C4", "--load", data("z4_perm.json")],
    ["group", "image", "incl:D4:D8"], ["group", "cokernel", "incl:A4:A5"],
    ["group", "normal", "D8"], ["group", "list", "--max", "8"],
    ["baer", "delta", "proj:Q8:Z2xZ2"], ["baer", "v1", "sign:S3"],
    ["baer", "centrality", "proj:D8:Z2xZ2"], ["baer", "commutator", "S3"],
    ["baer", "five-term", "--k", "mult:Z2:Z4:2", "--f", "mod:Z4:Z2", "--pres", "id:Z4"],
    ["ext", "is-central", "mod:Z4:Z2"], ["ext", "reflect", "sign:S3"],
    ["ext", "uct", "--base", "D8", "--coeff", "Z2"],
    ["ext", "hs5", "--k", "mult:Z2:Z4:2", "--f", "mod:Z4:Z2", "--coeff", "Z2"],
    ["ext", "baer-sum", "--base", "Z2", "--coeff", "Z2", "--left", "1", "--right", "1"],
    ["ext", "universal", "A5"], ["corpus", "list"],
    ["corpus", "run", "snake", "--count", "5"],
])
def test_commands_succeed(capsys, argv):
    rep, code, _ = run(capsys, *argv)
    assert code == 0, rep
    assert "error" not in rep


def test_snake_report(capsys):
    rep, _, _ = run(capsys, "snake", data("snake.json"))
    assert rep["orders"] == [2] * 6 and rep["allExact"] and rep["delta"] == [0, 1]


def test_horn_option(capsys):
    rep, code, _ = run(capsys, "simp", "fill", data("tower.json"), "--horn",
                       '{"n": 2, "k": 1, "faces": {"0": 1, "2": 1}}')
    assert code == 0 and rep["faces"][0] == rep["faces"][2] == 1


def test_failed_verdict_exits_1(capsys, tmp_path):
    p = tmp_path / "x.json"
    p.write_text(json.dumps({"T": "S3", "G": "1", "boundary": "zero:S3:1",
                             "action": "trivial"}))
    rep, code, _ = run(capsys, "xmod", "check", str(p))
    assert code == 1 and rep["isCrossed"] is False and "witness" in rep


def test_failed_corpus_exits_1(capsys):
    register_suite("cli-false", lambda r: gen_surjection(r, 8),
                   lambda c: {"always-injective": c.data.is_injective}, count=10)
    try:
        rep, code, _ = run(capsys, "corpus", "run", "cli-false")
    finally:
        SUITES.pop("cli-false")
    assert code == 1 and rep["counterexample"]["failed"] == ["always-injective"]


@pytest.mark.parametrize("argv,error", [
    (["group", "check", "Nope"], "UnresolvedReference"),
    (["group", "check", "A5", "--cap", "10"], "SizeCapExceeded"),
    (["frobnicate"], "UnknownCommand"),
    (["corpus", "run", "no-such-suite"], "UnknownSuite"),
    (["chain", "homology", "/nonexistent.json"], "ParseError"),
    (["group", "cokernel", "incl:A4:A5", "--load", "/nonexistent.json"], "ParseError"),
])
def test_malformed_input_exits_2(capsys, argv, error):
    rep, code, _ = run(capsys, *argv)
    assert code == 2 and rep["error"] == error


def test_reports_byte_identical(capsys):
    argv = ["corpus", "run", "centrality", "--seed", "5", "--count", "30"]
    _, _, a = run(capsys, *argv)
    _, _, b = run(capsys, *argv)
    assert a == b


def test_run_command_returns_report():
    rep, code = run_command(["group", "check", "S3"])
    assert rep == {"valid": True, "order": 6, "abelian": False} and code == 0


@pytest.mark.skipif(shutil.which("semiab") is None, reason="console script not installed")
def test_console_script():
    out = subprocess.run(["semiab", "group", "check", "Z4"], capture_output=True, text=True)
    assert out.returncode == 0
    assert json.loads(out.stdout) == {"valid": True, "order": 4, "abelian": True}


def test_help_exits_cleanly(capsys):
    assert main(["group", "--help"]) == 0
    out = capsys.readouterr().out
    assert "usage:" in out and "UnknownCommand" not in out
