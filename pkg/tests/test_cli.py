import argparse
import json

import pytest

from pfres.cli import main, parse_n_list


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_n_list():
    assert parse_n_list("5..8") == [5, 6, 7, 8]
    assert parse_n_list("5-8") == [5, 6, 7, 8]
    assert parse_n_list("5,7") == [5, 7]
    assert parse_n_list("7,5..6") == [5, 6, 7]
    with pytest.raises(argparse.ArgumentTypeError):
        parse_n_list("8..5")
    with pytest.raises(ValueError):
        parse_n_list("x")


def test_rank(capsys):
    code, out, _ = run(capsys, "rank", "--n", "7", "--seed", "42")
    assert code == 0 and out.strip() == "(4, 3, 1)"
    code, out, _ = run(capsys, "rank", "--n", "6")
    assert code == 0 and out.strip() == "(3, 3, 1)"


def test_usage_errors(capsys):
    assert run(capsys, "rank", "--n", "5", "--prime", "4")[0] == 2
    assert run(capsys, "build", "--n", "4", "--parity", "odd")[0] == 2
    assert run(capsys, "rank", "--n", "5", "--votes", "0")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "nope"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def test_build_json(capsys):
    code, out, _ = run(capsys, "build", "--n", "5", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert len(data["d1"]) == 1 and len(data["d1"][0]) == 4
    assert len(data["d3"][0]) == 2


def test_build_latex_and_text(capsys, tmp_path):
    code, out, _ = run(capsys, "build", "--n", "6", "--format", "latex")
    assert code == 0 and "\\begin" in out
    target = tmp_path / "d.txt"
    code, out, _ = run(capsys, "build", "--n", "6", "--format", "text", "-o", str(target))
    assert code == 0 and out == ""
    assert target.read_text().startswith("d3 =")


def test_build_equivariant(capsys):
    code, out, _ = run(capsys, "build", "--n", "7", "--variant", "equivariant")
    assert code == 0
    assert "grading" in json.loads(out)
    assert run(capsys, "build", "--n", "7", "--variant", "equivariant", "--format", "latex")[0] == 2


def test_verify_is_deterministic(capsys):
    first = run(capsys, "verify", "--suite", "complex", "--n", "5..6")
    second = run(capsys, "verify", "--suite", "complex", "--n", "5..6")
    assert first[0] == 0
    assert first[1] == second[1]
    assert first[2] == ""


def test_verify_json_and_timing(capsys):
    code, out, err = run(capsys, "verify", "--suite", "regseq", "--n", "5", "--json", "--timing")
    assert code == 0
    assert json.loads(out)["ok"] is True
    assert err.startswith("elapsed")


def test_verify_slow_warning(capsys):
    code, _, err = run(capsys, "verify", "--suite", "minor-product", "--n", "9", "--specialize")
    assert code == 0 and err == ""


def test_schubert_commands(capsys):
    code, out, _ = run(capsys, "schubert", "--n", "4", "--poset", "--format", "dot")
    assert code == 0 and out.count("->") == 8
    code, out, _ = run(capsys, "schubert", "--n", "4", "--poset", "--format", "json")
    assert len(json.loads(out)["elements"]) == 8
    code, out, _ = run(capsys, "schubert", "--n", "6", "--ideal", "w'")
    assert code == 0 and "[redundant]" in out.splitlines()[0]
    code, out, _ = run(capsys, "schubert", "--n", "7", "--format-cone")
    assert "R^4(-6)" in out
    assert run(capsys, "schubert", "--n", "6", "--ideal", "w''", "--format", "dot")[0] == 2
    assert run(capsys, "schubert", "--n", "4", "--ideal", "w''")[0] == 2


def test_verify_config_round_trip():
    from pfres.config import VerifyConfig

    config = VerifyConfig("complex", (5,))
    assert config.to_dict()["ns"] == (5,)
    assert config.run().ok
