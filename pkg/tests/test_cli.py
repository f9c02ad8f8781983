"""CLI surface: subcommands, determinism, exit codes, scenario running."""

import json
import os
import pathlib

from germlab.cli import EXIT_HYPOTHESIS, EXIT_RESOURCE, EXIT_USAGE, run_command

SCENARIOS = pathlib.Path(__file__).resolve().parent.parent / "scenarios"

SPODZIEJA_ARGV = [
    "spodzieja", "--ring", "s,t",
    "--map", "s^2-t^2, s*(s^2-t^2), t",
    "--coring", "x,y,t",
    "--extra-point", "0,0,1",
    "--json", "--no-timestamp",
]


def test_spodzieja_counterexample_json():
    code, text = run_command(SPODZIEJA_ARGV)
    assert code == 0
    doc = json.loads(text)
    assert doc["result"] == {
        "i0": 2,
        "regular_mult": 1,
        "lelong": 2,
        "geometric_mult_lower_bound": 2,
        "holds": True,
        "naive_product": 4,
    }
    assert doc["config"]["seed"] == 0
    assert doc["warnings"] == []
    assert "timestamp" not in doc


def test_byte_identical_reruns():
    _, first = run_command(SPODZIEJA_ARGV)
    _, second = run_command(SPODZIEJA_ARGV)
    assert first == second


def test_golden_file_byte_identical():
    golden = (pathlib.Path(__file__).parent / "data" / "spodzieja_seed0.json")
    _, text = run_command(SPODZIEJA_ARGV)
    assert text == golden.read_text()


def test_seed_changes_projections_not_values():
    base = SPODZIEJA_ARGV[:-2] + ["--json", "--no-timestamp"]
    _, a = run_command(base + ["--seed", "0"])
    _, b = run_command(base + ["--seed", "12345"])
    da, db = json.loads(a), json.loads(b)
    assert da["result"] == db["result"]
    assert da["config"]["seed"] == 0
    assert db["config"]["seed"] == 12345


def test_mult_identity():
    code, text = run_command(
        ["mult", "--ring", "x,y", "--map", "x, y", "--json", "--no-timestamp"]
    )
    assert code == 0
    assert json.loads(text)["result"]["local_multiplicity"] == 1


def test_pullback_hypothesis_failure_exit_2():
    code, text = run_command([
        "pullback", "--ring", "x,y", "--map", "x^2, y",
        "--coring", "u,v", "--ideal", "v^2 - u^3",
        "--json", "--no-timestamp",
    ])
    assert code == EXIT_HYPOTHESIS
    doc = json.loads(text)
    assert doc["result"]["verdict"] == "hypothesis_failed"
    assert doc["result"]["reason"] == "pull-back germ is not smooth"


def test_pullback_certified_exit_0():
    code, text = run_command([
        "pullback", "--ring", "x,y", "--map", "x^2, y",
        "--coring", "u,v", "--ideal", "v",
        "--json", "--no-timestamp",
    ])
    assert code == 0
    doc = json.loads(text)
    assert doc["result"]["verdict"] == "W_smooth_certified"
    assert doc["result"]["mu"] == 2
    assert doc["result"]["lambda"] == 2
    assert doc["result"]["kappa"] == 1
    assert doc["result"]["d"] == 1


def test_parse_error_exit_1_with_location():
    code, text = run_command(
        ["mult", "--ring", "x", "--map", "x^2*q", "--json", "--no-timestamp"]
    )
    assert code == EXIT_USAGE
    doc = json.loads(text)
    assert doc["error"]["location"] == {"line": 1, "column": 5}


def test_resource_guard_exit_3():
    code, text = run_command([
        "gb", "--ring", "x,y", "--ideal", "x^2 - y, y^2 - x",
        "--order", "lex", "--max-degree", "1", "--json",
    ])
    assert code == EXIT_RESOURCE


def test_precondition_exit_2_without_traceback():
    code, text = run_command(
        ["mult", "--ring", "x,y", "--map", "x*y, x", "--json", "--no-timestamp"]
    )
    assert code == EXIT_HYPOTHESIS
    assert "not finite" in json.loads(text)["error"]["message"]


def test_env_seed_default(monkeypatch):
    monkeypatch.setenv("GERMLAB_SEED", "777")
    _, text = run_command(
        ["mult", "--ring", "x,y", "--map", "x, y", "--json", "--no-timestamp"]
    )
    assert json.loads(text)["config"]["seed"] == 777
    # the flag wins
    _, text = run_command(
        ["mult", "--ring", "x,y", "--map", "x, y", "--seed", "3",
         "--json", "--no-timestamp"]
    )
    assert json.loads(text)["config"]["seed"] == 3


def test_gb_command():
    code, text = run_command([
        "gb", "--ring", "x,y", "--ideal", "x^2 - y, y^2 - x",
        "--order", "lex", "--json", "--no-timestamp",
    ])
    assert code == 0
    doc = json.loads(text)
    assert set(doc["result"]["basis"]) == {"-y^2 + x", "y^4 - y"}


def test_fiber_command_with_multiplicity_flag():
    base = ["fiber", "--ring", "x,y", "--map", "x^2, y", "--point", "0,0",
            "--json", "--no-timestamp"]
    _, text = run_command(base)
    assert json.loads(text)["result"]["fiber_point_count"] == 1
    _, text = run_command(base + ["--with-multiplicity"])
    assert json.loads(text)["result"]["fiber_point_count"] == 2


def test_jacobian_command_with_ideal():
    code, text = run_command([
        "jacobian", "--ring", "x,y", "--map", "x^2*y, x + y",
        "--ideal", "y", "--json", "--no-timestamp",
    ])
    doc = json.loads(text)
    assert doc["result"]["jacobian_determinant"] == "-x^2 + 2*x*y"
    assert doc["result"]["nonvanishing_on_ideal"] is True


def test_big_integers_render_as_strings():
    from germlab.cli import _jsonable

    assert _jsonable(2**53) == str(2**53)
    assert _jsonable(2**53 - 1) == 2**53 - 1
    assert _jsonable(-(2**60)) == str(-(2**60))
    from fractions import Fraction

    assert _jsonable(Fraction(-3, 4)) == "-3/4"


def test_text_mode_mirrors_json():
    code, text = run_command([
        "mult", "--ring", "x,y", "--map", "x^2, y", "--no-timestamp",
    ])
    assert code == 0
    assert "result.local_multiplicity: 2" in text
    assert "warnings: []" in text


def test_run_counterexample_scenario():
    code, text = run_command(
        ["run", str(SCENARIOS / "counterexample.scn"), "--json", "--no-timestamp"]
    )
    assert code == 0
    doc = json.loads(text)
    by_command = {}
    for task in doc["tasks"]:
        by_command.setdefault(task["command"], []).append(task["result"])
    assert by_command["image"][0]["image_ideal"] == ["x^2*t^2 + x^3 - y^2"]
    assert by_command["index"][0]["intersection_index"] == 2
    fibers = [r["fiber_point_count"] for r in by_command["fiber"]]
    assert fibers == [2, 1]
    spod = by_command["spodzieja"][0]
    assert spod["holds"] is True and spod["naive_product"] == 4


def test_run_branch_union_scenario():
    code, text = run_command(
        ["run", str(SCENARIOS / "branch_union.scn"), "--json", "--no-timestamp"]
    )
    assert code == 0
    doc = json.loads(text)
    fibers = [
        (t["result"]["fiber_point_count"], t["result"]["distinct"])
        for t in doc["tasks"] if t["command"] == "fiber"
    ]
    assert fibers == [(3, True), (2, True), (3, False)]
    crit = [t for t in doc["tasks"] if t["command"] == "critical"][0]
    assert len(crit["result"]["critical_locus"]) == 1


def test_run_scenario_is_deterministic():
    argv = ["run", str(SCENARIOS / "counterexample.scn"), "--json",
            "--no-timestamp"]
    _, a = run_command(argv)
    _, b = run_command(argv)
    assert a == b


def test_scenario_ideal_sides_resolve_correctly(tmp_path):
    scn = tmp_path / "sides.scn"
    scn.write_text(
        "ring x y ;\ncoring u v ;\nmap F = x^2 , y ;\n"
        "ideal D = y^2 - x^3 ;\ncideal W = v^2 - u^3 ;\n"
        "task degree D ;\ntask degree W ;\ntask pullback F W ;\n"
    )
    code, text = run_command(["run", str(scn), "--json", "--no-timestamp"])
    doc = json.loads(text)
    degrees = [t["result"]["lelong_degree"] for t in doc["tasks"]
               if t["command"] == "degree"]
    assert degrees == [2, 2]  # domain cusp and codomain cusp both resolve
    pullback = [t for t in doc["tasks"] if t["command"] == "pullback"][0]
    assert pullback["result"]["verdict"] == "hypothesis_failed"
    assert code == EXIT_HYPOTHESIS  # the failed hypothesis dominates


def test_run_missing_file_exit_2():
    code, _ = run_command(["run", "no_such_file.scn", "--json"])
    assert code == EXIT_HYPOTHESIS


def test_scenario_parse_error_reports_position(tmp_path):
    bad = tmp_path / "bad.scn"
    bad.write_text("ring x ;\ntask mult nope ;\n")
    code, text = run_command(["run", str(bad), "--json"])
    assert code == EXIT_USAGE
