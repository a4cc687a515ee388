import json
from pathlib import Path

import pytest

from arrowlab import cli

HERE = Path(__file__).parent
SCENARIOS = HERE / "scenarios"
GOLDEN = HERE / "golden"


def run_cli(args, capsys):
    code = cli.main([str(a) for a in args])
    out = capsys.readouterr()
    return code, out.out, out.err


def run_scenario(name, tmp_path, capsys, *extra):
    out = tmp_path / f"{name}.env"
    code, _, err = run_cli(["run", "--scenario", SCENARIOS / f"{name}.json", "--out", out, *extra], capsys)
    return code, out, err


@pytest.mark.parametrize("name,code", [("r33_holds", 0), ("r33_fails", 1), ("pigeonhole", 0), ("rigidity", 1)])
def test_exit_codes(name, code, tmp_path, capsys):
    got, out, _ = run_scenario(name, tmp_path, capsys)
    assert got == code
    env = json.loads(out.read_text())
    assert env["verdict"] == ("holds" if code == 0 else "fails")
    assert ("witness_table" in env["certificate"]) == (code == 0)


def test_input_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"query": "arrow", "category": {"name": "FSI"}, "A": 2, "B": 3, "C": 6, "k": 1}))
    code, _, err = run_cli(["arrow", "--scenario", bad], capsys)
    assert code == 3 and "$.k" in err
    bad.write_text(json.dumps({"query": "arrow", "category": {"name": "FSI"}, "colour": 2}))
    code, _, err = run_cli(["arrow", "--scenario", bad], capsys)
    assert code == 3 and "colour" in err
    code, _, _ = run_cli(["laws", "--scenario", SCENARIOS / "r33_holds.json"], capsys)
    assert code == 3
    code, _, _ = run_cli(["arrow", "--scenario", tmp_path / "missing.json"], capsys)
    assert code == 3


def test_inconclusive_exit(tmp_path, capsys):
    code, out, _ = run_scenario("r33_holds", tmp_path, capsys, "--budget", "5")
    assert code == 2
    assert json.loads(out.read_text())["verdict"] == "inconclusive"


def test_flag_overrides(tmp_path, capsys):
    code, out, _ = run_scenario("r33_fails", tmp_path, capsys, "--mode", "backtracking", "--k", "3")
    env = json.loads(out.read_text())
    assert env["mode"] == "backtracking" and env["scenario"]["k"] == 3
    assert code == 1  # [5] -> ([3])^[2]_3 fails as well


def test_revalidate_fresh_and_flipped(tmp_path, capsys):
    for name in ("r33_fails", "r33_holds"):
        _, out, _ = run_scenario(name, tmp_path, capsys)
        code, text, _ = run_cli(["revalidate", out], capsys)
        assert code == 0 and text.startswith("valid")
        env = json.loads(out.read_text())
        cert = env["certificate"]
        if "bad_coloring" in cert:
            cert["bad_coloring"][0][1] = 3 - cert["bad_coloring"][0][1]
        else:
            cert["witness_table"][0][1] = 3 - cert["witness_table"][0][1]
        out.write_text(json.dumps(env))
        code, text, _ = run_cli(["revalidate", out], capsys)
        assert code == 1 and text.startswith("invalid")


def test_revalidate_rejects_tampered_scenario(tmp_path, capsys):
    _, out, _ = run_scenario("r33_fails", tmp_path, capsys)
    env = json.loads(out.read_text())
    env["scenario"]["C"] = 6
    out.write_text(json.dumps(env))
    code, text, _ = run_cli(["revalidate", out], capsys)
    assert code == 1 and "hash" in text


@pytest.mark.parametrize("name", ["r33_holds", "r33_fails", "pigeonhole"])
def test_report_golden(name, tmp_path, capsys):
    _, out, _ = run_scenario(name, tmp_path, capsys)
    code, text, _ = run_cli(["report", out], capsys)
    assert code == 0
    assert text == (GOLDEN / f"{name}.txt").read_text()


def test_envelope_fields(tmp_path, capsys):
    _, out, _ = run_scenario("search", tmp_path, capsys)
    env = json.loads(out.read_text())
    assert set(env) == {"tool_version", "scenario_hash", "scenario", "mode", "verdict", "certificate", "wall_clock"}
    assert env["scenario_hash"] == cli.scenario_hash(env["scenario"])
    assert env["certificate"]["found"] == 3


def test_seed_changes_samples(tmp_path, capsys, monkeypatch):
    _, a, _ = run_scenario("product", tmp_path, capsys)
    first = json.loads(a.read_text())["certificate"]["samples"]
    monkeypatch.setenv("ARROWLAB_SEED", "7")
    _, b, _ = run_scenario("product", tmp_path, capsys)
    second = json.loads(b.read_text())["certificate"]["samples"]
    assert first != second
    assert run_cli(["revalidate", b], capsys)[0] == 0


def test_stdout_when_no_out(capsys):
    code, text, _ = run_cli(["run", "--scenario", SCENARIOS / "laws_fss.json"], capsys)
    assert code == 0 and json.loads(text)["verdict"] == "pass"
