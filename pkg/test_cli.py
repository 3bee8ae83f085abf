#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Test della riga di comando e della pipeline
"""

import json
import os
import sys
from dataclasses import replace

# Assicurati che la directory principale sia nel path per importare i moduli
current_dir = os.path.dirname(os.path.abspath(__file__))
if current_dir not in sys.path:
    sys.path.insert(0, current_dir)

import pandas as pd
import pytest

from assignment import solve_lsap
from config import Config
from digraph import CostMatrix, StructuredSystem, load_system_file, serialize_system
from example_data_loader import get_example_names, get_example_text, load_example
from main import main
from oracle import enumerate_all
from pipeline import analyze_instance, solve_instance, verify_instance
from state import strip_timings
from tools.report_generator import render_solution, sweep_frame


@pytest.fixture
def instance_file(tmp_path):
    """Scrive un esempio su file e ne restituisce il percorso"""
    def write(example_id):
        path = tmp_path / f"{example_id}.json"
        path.write_text(get_example_text(example_id), encoding="utf-8")
        return str(path)
    return write


def tampered_solver(reduced, tolerance):
    solution = solve_lsap(reduced, tolerance)
    return replace(solution, total_cost=solution.total_cost + 1)


def test_analyze_cyclic_instance(instance_file, capsys):
    assert main(["analyze", instance_file("example1"), "--json"]) == Config.EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["structurally_cyclic"] is True
    assert report["cyclicity_check"] == "self-damped"
    assert report["parent_count"] == 4
    assert report["reduced"] is None


def test_analyze_table_output(instance_file, capsys):
    assert main(["analyze", instance_file("example1")]) == Config.EXIT_OK
    out = capsys.readouterr().out
    assert "x1, x2, x3" in out
    assert "parent" in out and "child" in out


def test_analyze_non_cyclic_instance(instance_file, capsys):
    assert main(["analyze", instance_file("acyclic_chain")]) == Config.EXIT_NOT_CYCLIC
    assert "not structurally cyclic: structural rank 2 < n=3" in capsys.readouterr().err


def test_input_errors(tmp_path, capsys):
    empty = tmp_path / "empty.json"
    empty.write_text("", encoding="utf-8")
    assert main(["analyze", str(empty)]) == Config.EXIT_INPUT_ERROR

    malformed = tmp_path / "malformed.json"
    malformed.write_text('{"n": 2,\n "edges": [[1, 1],\n', encoding="utf-8")
    assert main(["solve", str(malformed)]) == Config.EXIT_INPUT_ERROR

    assert main(["solve", str(tmp_path / "missing.json")]) == Config.EXIT_INPUT_ERROR
    assert "obsel: input error" in capsys.readouterr().err


def test_solve_example1(instance_file, capsys):
    assert main(["solve", instance_file("example1"), "--json"]) == Config.EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["feasible"] is True
    assert report["total_cost"] == 6
    assert [entry["state"] for entry in report["assignment"]] == [13, 3, 9, 14]
    assert [entry["parent_scc"] for entry in report["assignment"]] == [3, 1, 2, 4]
    assert sum(report["row_duals"]) + sum(report["col_duals"]) == 6


def test_solve_writes_output_file(instance_file, tmp_path, capsys):
    output = tmp_path / "reports" / "solution.txt"
    assert main(["solve", instance_file("two_node"), "--output", str(output)]) == Config.EXIT_OK
    assert capsys.readouterr().out == ""
    assert "total cost" in output.read_text(encoding="utf-8")


def test_solve_infeasible_instances(instance_file, capsys):
    assert main(["solve", instance_file("uncoverable_parent")]) == Config.EXIT_INFEASIBLE
    assert "infeasible: no sensor can realize parent SCC {x2}" in capsys.readouterr().err

    assert main(["solve", instance_file("hall_violation")]) == Config.EXIT_INFEASIBLE
    assert "can only be realized by sensors [1]" in capsys.readouterr().err


def test_solve_insufficient_sensors(instance_file, capsys):
    assert main(["solve", instance_file("insufficient_sensors")]) == Config.EXIT_INSUFFICIENT_SENSORS
    assert "insufficient sensors for observability: m=3 < 4" in capsys.readouterr().err


@pytest.mark.parametrize("costs, expected", [
    ([[10 ** 19, 1], [1, 2]], 2),
    ([[4 * 10 ** 18, None], [None, 1]], 4e18),
])
def test_solve_huge_integer_costs(tmp_path, capsys, costs, expected):
    path = tmp_path / "huge.json"
    path.write_text(json.dumps({"n": 2, "edges": [[1, 1], [2, 2]], "m": 2, "costs": costs}), encoding="utf-8")
    assert main(["solve", str(path), "--json"]) == Config.EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["feasible"] is True
    assert report["total_cost"] == pytest.approx(expected)


def test_verify_example1_with_csv(instance_file, tmp_path, capsys):
    csv_path = tmp_path / "sweep.csv"
    assert main(["verify", instance_file("example1"), "--csv", str(csv_path), "--json"]) == Config.EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["match"] is True
    assert report["oracle_cost"] == report["solver_cost"] == 6

    frame = pd.read_csv(csv_path)
    assert list(frame.columns) == ["selection", "cost", "observable", "states"]
    assert len(frame) == report["observable_count"] + report["non_observable_count"]
    assert frame.loc[0, "cost"] == 6
    assert frame.loc[0, "states"] == "x13 x3 x9 x14"
    observable = frame[frame["observable"]]
    assert observable["cost"].is_monotonic_increasing
    assert frame[~frame["observable"]]["cost"].is_monotonic_decreasing


def test_verify_detects_a_wrong_solver(instance_file, capsys):
    code = main(["verify", instance_file("example1")], solver=tampered_solver)
    assert code == Config.EXIT_ORACLE_MISMATCH
    assert "solver and oracle disagree" in capsys.readouterr().err


def test_verify_refuses_large_instances(tmp_path, capsys):
    system = StructuredSystem.from_edges(10, [(k, k) for k in range(1, 11)])
    costs = CostMatrix.from_rows([[1] * 10 for _ in range(10)])
    path = tmp_path / "large.json"
    path.write_text(serialize_system(system, costs), encoding="utf-8")
    assert main(["verify", str(path)]) == Config.EXIT_INPUT_ERROR
    assert "too large for enumeration" in capsys.readouterr().err


def test_verify_non_cyclic_and_missing_instance(instance_file):
    assert main(["verify", instance_file("acyclic_chain")]) == Config.EXIT_NOT_CYCLIC
    assert main(["verify"]) == Config.EXIT_INPUT_ERROR


def test_verify_batch(capsys):
    argv = ["verify", "--batch", "3", "--workers", "1", "--n", "6", "--parents", "3", "--seed", "5", "--json"]
    assert main(argv) == Config.EXIT_OK
    reports = json.loads(capsys.readouterr().out)
    assert [report["seed"] for report in reports] == [5, 6, 7]
    assert all(report["match"] for report in reports)


def test_gen_is_deterministic(tmp_path):
    first = tmp_path / "first.json"
    second = tmp_path / "second.json"
    flags = ["--topology", "parent-chain", "--n", "8", "--parents", "3", "--seed", "42", "--integer-costs"]
    assert main(["gen", *flags, "--output", str(first)]) == Config.EXIT_OK
    assert main(["gen", *flags, "--output", str(second)]) == Config.EXIT_OK
    assert first.read_text(encoding="utf-8") == second.read_text(encoding="utf-8")

    system, costs = load_system_file(str(first))
    assert system.n == 8 and costs.m == 3
    assert costs.is_integral


def test_gen_example1_then_solve(tmp_path, capsys):
    path = tmp_path / "example1.json"
    assert main(["gen", "--topology", "example1", "--seed", "7", "--output", str(path)]) == Config.EXIT_OK
    system, costs = load_system_file(str(path))
    assert system.n == 15 and costs.m == 4
    assert main(["verify", str(path)]) == Config.EXIT_OK
    assert "oracle cost" in capsys.readouterr().out


def test_gen_errors(capsys):
    assert main(["gen", "--n", "5"]) == Config.EXIT_INPUT_ERROR
    assert main(["gen", "--topology", "example1", "--n", "10"]) == Config.EXIT_INPUT_ERROR
    assert main(["gen", "--topology", "random-cyclic", "--n", "5", "--parents", "2"]) == Config.EXIT_INPUT_ERROR
    assert "generator error" in capsys.readouterr().err


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["--version"])
    assert excinfo.value.code == 0
    assert Config.VERSION in capsys.readouterr().out


def test_reports_are_reproducible():
    system, costs = load_example("example1")
    first = solve_instance(system, costs)
    second = solve_instance(system, costs)
    assert strip_timings(first) == strip_timings(second)
    assert set(first["timings"]) == {"matching", "scc", "reduction", "lsap", "feasibility"}
    assert "x13" in render_solution(first)


def test_analysis_stops_before_reduction():
    system, costs = load_example("acyclic_chain")
    report = solve_instance(system, costs)
    assert report["structurally_cyclic"] is False
    assert report["reduced"] is None
    assert report["feasible"] is None
    assert "lsap" not in report["timings"]
    assert analyze_instance(system, costs)["structural_rank"] == 2


def test_verify_instance_reports_both_infeasible():
    system, costs = load_example("uncoverable_parent")
    report, enumeration = verify_instance(system, costs)
    assert report["match"] is True
    assert report["detail"] == "both infeasible"
    assert enumeration.min_observable_cost is None


def test_sweep_frame_ordering():
    system = StructuredSystem.from_edges(2, [(1, 2), (2, 1)])
    costs = CostMatrix.from_rows([[4, 1], [2, 3], [1, 9]])
    frame = sweep_frame(enumerate_all(system, costs))
    observable = frame[frame["observable"]]
    assert observable["cost"].tolist() == sorted(observable["cost"].tolist())
    assert frame["selection"].tolist() == list(range(1, len(frame) + 1))
    # L'unica selezione non osservabile lascia tutti i sensori non assegnati
    assert frame.iloc[-1]["states"] == "- - -"
    assert not frame.iloc[-1]["observable"]


def test_fixture_listing():
    ids = [example["id"] for example in get_example_names()]
    assert ids[0] == "example1"
    assert {"two_node", "hall_violation", "insufficient_sensors"} <= set(ids)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
