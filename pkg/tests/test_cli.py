"""Command-line interface: exit codes, output formats, golden report."""

import json
import pathlib
import shutil
import subprocess

import pytest

from dunklops.builders import build_Dphi
from dunklops.cli import main, parse_k_list
from dunklops.exprparse import pretty

GOLDEN = pathlib.Path(__file__).parent / "golden"


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def test_verify_text_mode(capsys):
    code, out, err = run_cli(capsys, "verify", "--k", "2")
    assert code == 0
    assert err == ""
    lines = out.splitlines()
    assert lines[-1] == "-- 32 pass, 0 fail, 5 skipped"
    assert any(line.startswith("PASS") and "k=2" in line for line in lines)
    assert any(line.startswith("SKIPPED") for line in lines)
    assert not any(line.startswith("FAIL") for line in lines)


def test_verify_json_matches_golden(capsys):
    code, out, _ = run_cli(capsys, "verify", "--k", "2", "--json")
    assert code == 0
    got = json.loads(out)
    for row in got:
        row["elapsed_ms"] = 0
    expect = json.loads((GOLDEN / "verify_k2.json").read_text())
    assert got == expect


def test_verify_out_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run_cli(capsys, "verify", "--k", "1", "--json",
                           "--out", str(target))
    assert code == 0
    assert out == ""                      # no stdout chatter with --out
    rows = json.loads(target.read_text())
    assert all(row["k"] == 1 for row in rows)
    assert all(row["status"] in ("pass", "skipped") for row in rows)


def test_verify_mutation_fails(capsys):
    code, out, _ = run_cli(capsys, "verify", "--k", "3",
                           "--mutate", "b-shift")
    assert code == 1
    assert "FAIL" in out
    assert "sample:" in out
    summary = out.splitlines()[-1]
    assert " fail" in summary and " 0 fail" not in summary


def test_verify_suite_filter_and_optional(capsys):
    code, out, _ = run_cli(capsys, "verify", "--k", "2",
                           "--suite", "group_*", "--json")
    assert code == 0
    rows = json.loads(out)
    assert rows
    assert all(row["check_id"].startswith("group_relations") for row in rows)
    code, out, _ = run_cli(capsys, "verify", "--k", "2",
                           "--suite", "hk_selfadjoint", "--json")
    assert code == 0
    rows = json.loads(out)
    assert [row["check_id"] for row in rows] == ["hk_selfadjoint[main]"]
    assert rows[0]["status"] == "pass"


def test_verify_with_oracle(capsys):
    code, out, _ = run_cli(capsys, "verify", "--k", "2", "--oracle",
                           "--trials", "5", "--json")
    assert code == 0
    rows = json.loads(out)
    oracle_rows = [r for r in rows if r["check_id"].startswith("oracle:")]
    assert oracle_rows
    assert all(r["status"] == "pass" for r in oracle_rows)


def test_verify_flag_validation(capsys):
    for argv in (["verify", "--k", "2", "--trials", "0"],
                 ["verify", "--k", "2", "--tol", "-1"],
                 ["verify", "--k", "0"],
                 ["verify", "--k", "1..x"],
                 ["verify", "--k", "99"]):
        code, _, err = run_cli(capsys, *argv)
        assert code == 2, argv
        assert err.startswith("error:"), argv
    code, _, err = run_cli(capsys, "verify", "--k", "2", "--mutate", "bogus")
    assert code == 2                      # argparse rejects the choice


def test_k_ceiling_message(capsys):
    code, _, err = run_cli(capsys, "verify", "--k", "99")
    assert code == 2
    assert "DUNKLOPS_MAX_K" in err


def test_k_parsing_unit():
    assert parse_k_list("3", 12) == [3]
    assert parse_k_list("1,3,5", 12) == [1, 3, 5]
    assert parse_k_list("1..4", 12) == [1, 2, 3, 4]
    with pytest.raises(ValueError):
        parse_k_list("x", 12)
    with pytest.raises(ValueError):
        parse_k_list("5..3", 12)
    with pytest.raises(ValueError):
        parse_k_list("13", 12)
    with pytest.raises(ValueError):
        parse_k_list("0", 12)


def test_env_ceiling_override(capsys, monkeypatch):
    monkeypatch.setenv("DUNKLOPS_MAX_K", "2")
    code, _, err = run_cli(capsys, "norm", "--k", "3", "R")
    assert code == 2
    assert "k=3" in err
    monkeypatch.setenv("DUNKLOPS_MAX_K", "13")
    code, out, _ = run_cli(capsys, "norm", "--k", "13", "R")
    assert code == 0
    assert out.strip() == "R"


# ---------------------------------------------------------------------------
# expression commands
# ---------------------------------------------------------------------------


def test_show_named_operator(capsys):
    code, out, _ = run_cli(capsys, "show", "--k", "2", "--op", "Dphi")
    assert code == 0
    assert out.strip() == pretty(build_Dphi(2))


def test_show_positional_expressions(capsys):
    code, out, _ = run_cli(capsys, "show", "--k", "2", "dr", "R^2")
    assert code == 0
    assert out.splitlines() == ["dr", "R^2"]


def test_show_needs_input(capsys):
    code, _, err = run_cli(capsys, "show", "--k", "2")
    assert code == 2
    assert "nothing to show" in err


def test_norm_simplifies_group_words(capsys):
    code, out, _ = run_cli(capsys, "norm", "--k", "2", "I*R*I")
    assert code == 0
    assert out.strip() == "R^3"


def test_commute_matches_golden(capsys):
    code, out, _ = run_cli(capsys, "commute", "--k", "3", "Dr", "Dphi")
    assert code == 0
    golden = (GOLDEN / "commutator_k3.txt").read_text().rstrip("\n")
    assert out.strip() == golden


def test_adjoint_and_project(capsys):
    code, out, _ = run_cli(capsys, "adjoint", "--k", "2", "dphi")
    assert code == 0
    assert out.strip() == "-dphi"
    code, out, _ = run_cli(capsys, "project", "--k", "2", "R^3")
    assert code == 0
    assert out.strip() == "1"
    code, out, _ = run_cli(capsys, "project", "--k", "4", "HkExt")
    assert code == 0
    assert out.strip()


def test_expression_commands_want_one_k(capsys):
    code, _, err = run_cli(capsys, "norm", "--k", "1,2", "dr")
    assert code == 2
    assert "exactly one k" in err


def test_oracle_command(capsys):
    code, out, _ = run_cli(capsys, "oracle", "--k", "2", "Dr", "Dr")
    assert code == 0
    assert out.startswith("pass:")
    # "--" keeps a leading-minus expression out of flag parsing
    code, out, _ = run_cli(capsys, "oracle", "--k", "2", "--trials", "10",
                           "--", "dphi", "-dphi")
    assert code == 1
    assert out.startswith("fail:")
    code, out, _ = run_cli(capsys, "oracle", "--k", "4", "HkExt",
                           "HkExtViaDr", "--trials", "20", "--tol", "1e-8",
                           "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["status"] == "pass"
    assert payload["trials"] == 20


def test_parse_error_caret(capsys):
    code, _, err = run_cli(capsys, "norm", "--k", "2", "dr + ")
    assert code == 2
    lines = err.splitlines()
    assert lines[0].startswith("parse error:")
    assert lines[1] == "  dr + "
    assert lines[2] == "  " + " " * 5 + "^"


def test_usage_errors_exit_2(capsys):
    assert run_cli(capsys, "frobnicate")[0] == 2
    assert run_cli(capsys, "verify")[0] == 2          # --k is required
    assert run_cli(capsys)[0] == 2                    # subcommand required


@pytest.mark.skipif(shutil.which("dunklops") is None,
                    reason="console script not on PATH")
def test_console_script_smoke():
    proc = subprocess.run(["dunklops", "verify", "--k", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "pass" in proc.stdout
