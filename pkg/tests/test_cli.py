import json

import pytest

from realizability.cli import main, parse_family
from realizability.bamodels import Atomless, PowerFinite


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_parse_family():
    assert parse_family("pf1,pf3,atomless") == (
        PowerFinite(1), PowerFinite(3), Atomless())


def test_parse_command(capsys):
    code, out = run(capsys, "parse", "formula", "forall z. z!=0 -> z != 1")
    assert code == 0
    assert out.strip() == "forall z. z != 0 -> z != 1"


def test_parse_error_exit_code(capsys):
    assert main(["parse", "formula", "z != "]) == 65


def test_usage_exit_code():
    assert main(["no-such-command"]) == 64


def test_eval_prints_rules(capsys):
    code, out = run(capsys, "eval", "(\\x. x) cc * []")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("Push: ")
    assert lines[1].startswith("Grab: ")
    assert "stuck" in lines[-1]


def test_validity_exit_codes(capsys):
    assert run(capsys, "validity", "0 != 1")[0] == 0
    assert run(capsys, "validity", "forall z. z != 0")[0] == 1
    hard = "forall z. (z != 0 -> z \\/ ~z != 0)"
    assert run(capsys, "validity", hard)[0] == 2
    code, _ = run(capsys, "validity", hard, "--family-complete")
    assert code == 0


def test_validity_horn_example(capsys):
    code, out = run(capsys, "validity",
                    "forall z. forall w. z /\\ w == w /\\ z")
    assert code == 0 and "horn" in out


def test_theory_command(capsys):
    assert run(capsys, "theory", "--contains", "0 != 1")[0] == 0
    assert run(capsys, "theory", "--contains", "0 != 0")[0] == 1


def test_pole_member(capsys):
    code, out = run(capsys, "pole-member", "g{_|_} * []", "--k", "1")
    assert code == 0 and "k=1" in out
    assert run(capsys, "pole-member", "g{0 != 1} * []", "--k", "3")[0] == 1


def test_realizes(capsys):
    code, _ = run(capsys, "realizes", "\\x. x",
                  "forall z. forall w. z /\\ w == w /\\ z")
    assert code == 0


def test_lattice(capsys):
    code, out = run(capsys, "lattice", "--rank", "1", "--list")
    assert code == 0
    assert "|rank 1| = 3" in out


def test_denote(capsys):
    code, out = run(capsys, "denote", "\\x. x", "--rank", "1")
    assert code == 0 and "component(1)" in out


def test_theta_and_seq(capsys):
    code, out = run(capsys, "theta", "--rank", "1", "--element", "1")
    assert code == 0 and "->" in out
    assert run(capsys, "seq-check", "--rank", "0", "--element", "1")[0] == 1


def test_corpus_reproducible(capsys):
    _, out1 = run(capsys, "corpus", "formulas", "--size", "5", "--seed", "8")
    _, out2 = run(capsys, "corpus", "formulas", "--size", "5", "--seed", "8")
    assert out1 == out2 and len(out1.strip().splitlines()) == 5


def test_json_mode(capsys):
    code, out = run(capsys, "--json", "validity", "0 != 1")
    assert code == 0
    rec = json.loads(out.strip().splitlines()[-1])
    assert rec["status"] == "valid"


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "realiz.cfg"
    cfg.write_text("family = pf1\nk = 2\n")
    code, out = run(capsys, "--config", str(cfg),
                    "pole-member", "g{_|_} * []")
    assert code == 0
