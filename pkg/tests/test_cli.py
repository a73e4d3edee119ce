import json

import pytest

from pcval.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err.strip()


def test_ve_command(capsys):
    assert run(capsys, "ve", "--seq", "E1", "--fn", "(X)/(t)") == (0, "(0, -1) => NOT in V_E", "")


def test_rank_command(capsys):
    assert run(capsys, "rank", "--seq", "E2")[1] == "rank 1 (non-torsion: delta = sqrt(2))"


def test_equiv_squared_sequence(capsys, tmp_path):
    path = tmp_path / "sq.json"
    path.write_text(json.dumps({"kind": "SingleTerm", "beta": "0",
                                "gauge": {"kind": "Dyadic", "params": {"limit": "2", "scale": "2"}}}))
    code, out, _ = run(capsys, "equiv", "--seq", "E1", "--seq2", f"@{path}")
    assert (code, out) == (0, "not equivalent (breadths 1 vs 2)")


def test_json_output(capsys):
    code, out, _ = run(capsys, "we", "--seq", "E2", "--fn", "X^2/t^2", "--format", "json")
    assert code == 0
    assert json.loads(out) == {"w_E": {"q": "-2", "m": 2, "delta": "sqrt(2)"}}


def test_profile_command(capsys):
    code, out, _ = run(capsys, "profile", "--seq", "E1", "--fn", "X/t", "--depth", "4")
    assert code == 0 and out.splitlines()[-1] == "profile law holds"


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "ve", "--seq", "E1", "--fn", "X/(t")
    assert code == 3 and err.startswith("parse error")


def test_precondition_exit_code(capsys):
    assert run(capsys, "residue-sep", "--at", "0", "--delta", "1")[0] == 2
    assert run(capsys, "eval", "--fn", "1/(X - t)", "--at", "t")[0] == 2
    assert run(capsys, "rank", "--seq", "E9")[0] == 2


def test_residue_command_over_fp(capsys):
    code, out, _ = run(capsys, "residue-sep", "--backend", "fp:3", "--at", "0", "--delta", "1")
    assert code == 0 and out.endswith("all agree")


def test_config_file_sets_defaults(capsys, tmp_path, monkeypatch):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"format": "json"}))
    monkeypatch.setenv("PCVAL_CONFIG", str(cfg))
    code, out, _ = run(capsys, "degdom", "--seq", "E4", "--fn", "X^2 - (1 + t)")
    assert json.loads(out) == {"degdom": 1}


@pytest.mark.parametrize("argv", [
    ("fixtures",),
    ("val", "--x", "(t + t^2)/t^3"),
    ("annulus", "--fn", "X/t", "--at", "0", "--theta1", "1/2", "--theta2", "inf"),
    ("omega", "--seq", "E1", "--at", "t^(1/4)", "--gamma", "1/2"),
    ("converge", "--seq", "E3", "--fn", "X", "--fn", "1/(X - t)"),
    ("enumerate", "--fn", "X^2/t^3", "--target", "0"),
    ("separate", "--seq", "E1", "--fn", "t/X", "--sample", "E3"),
    ("monomial", "--fn", "X/t", "--alpha", "0", "--delta", "sqrt(2)"),
    ("member", "--seq", "E2", "--fn", "X/t", "--ring", "W"),
])
def test_commands_succeed(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and out
