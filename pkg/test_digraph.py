#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Test dello schema e del parser delle istanze
"""

import json
import os
import sys

# Assicurati che la directory principale sia nel path per importare i moduli
current_dir = os.path.dirname(os.path.abspath(__file__))
if current_dir not in sys.path:
    sys.path.insert(0, current_dir)

import numpy as np
import pytest

from digraph import (
    CostMatrix,
    InstanceParseError,
    InstanceValidationError,
    MeasurementStructure,
    StructuredSystem,
    instance_digest,
    load_system,
    out_neighbors,
    serialize_system
)
from example_data_loader import get_example_names, get_example_text, load_example


def _document(**overrides):
    document = {"n": 2, "edges": [[1, 1], [2, 2]], "m": 1, "costs": [[1, 2]]}
    document.update(overrides)
    return json.dumps(document, indent=2)


def test_minimal_instance():
    system, costs = load_system('{"n": 1, "edges": [[1, 1]], "m": 1, "costs": [[2.0]]}')
    assert system.n == 1
    assert system.edges == frozenset({(1, 1)})
    assert (costs.m, costs.n) == (1, 1)
    assert costs.cost(0, 1) == 2.0
    assert system.labels == ("x1",)


def test_null_entry_is_a_marker():
    _, costs = load_system(_document(costs=[[1, None]]))
    assert costs.realizable.tolist() == [[True, False]]
    assert costs.cost(0, 2) is None
    assert costs.to_rows() == [[1, None]]
    assert costs.is_integral


def test_row_without_realizable_state_is_rejected():
    with pytest.raises(InstanceValidationError, match="sensor 1 has no realizable state"):
        load_system(_document(costs=[[None, None]]))


def test_malformed_json_is_line_anchored():
    text = '{\n  "n": 2,\n  "edges": [[1, 1],,]\n}'
    with pytest.raises(InstanceParseError) as info:
        load_system(text)
    assert info.value.line == 3
    assert str(info.value).startswith("line 3")


def test_empty_text_is_a_parse_error():
    with pytest.raises(InstanceParseError):
        load_system("")


def test_edge_out_of_range_points_at_edges_key():
    text = _document(edges=[[1, 1], [2, 3]])
    with pytest.raises(InstanceValidationError, match="out of range") as info:
        load_system(text)
    assert info.value.line == 3


@pytest.mark.parametrize("costs", [[[1]], [[1, 2], [3, 4]], [[1, 2, 3]]])
def test_dimension_mismatch(costs):
    with pytest.raises(InstanceValidationError, match="dimension mismatch"):
        load_system(_document(costs=costs))


@pytest.mark.parametrize("value", [-1, "3", True])
def test_invalid_cost_entries(value):
    with pytest.raises(InstanceValidationError):
        load_system(_document(costs=[[value, 1]]))


def test_missing_key():
    with pytest.raises(InstanceValidationError, match="missing required key 'costs'"):
        load_system('{"n": 1, "edges": [], "m": 1}')


def test_duplicate_edges_collapse():
    system, _ = load_system(_document(edges=[[1, 1], [1, 1], [2, 2]]))
    assert len(system.edges) == 2


def test_out_neighbors():
    cycle = StructuredSystem.from_edges(3, [(1, 2), (2, 3), (3, 1)])
    assert out_neighbors(cycle, 1) == frozenset({2})

    loops = StructuredSystem.from_edges(2, [(1, 1)])
    assert loops.out_neighbors(1) == frozenset({1})
    assert loops.out_neighbors(2) == frozenset()

    with pytest.raises(InstanceValidationError):
        out_neighbors(cycle, 4)
    with pytest.raises(InstanceValidationError):
        out_neighbors(cycle, 0)


def test_structured_system_rejects_bad_edges():
    with pytest.raises(InstanceValidationError):
        StructuredSystem.from_edges(2, [(1, 3)])
    with pytest.raises(InstanceValidationError):
        StructuredSystem(n=0, edges=frozenset())


def test_structure_matrix_orientation():
    # x1 -> x2 corrisponde al non-zero A[2,1]
    system = StructuredSystem.from_edges(2, [(1, 2)])
    dense = system.dense_structure()
    assert dense.tolist() == [[0, 0], [1, 0]]


@pytest.mark.parametrize("example_id", ["example1", "two_node", "uncoverable_parent", "hall_violation"])
def test_round_trip(example_id):
    system, costs = load_example(example_id)
    again_system, again_costs = load_system(serialize_system(system, costs))
    assert again_system.edges == system.edges
    assert again_system.labels == system.labels
    assert again_costs.to_rows() == costs.to_rows()
    assert np.array_equal(again_costs.realizable, costs.realizable)


def test_edge_count_matches_dense_nonzeros():
    system, _ = load_example("example1")
    assert int(system.dense_structure().sum()) == len(system.edges) == 35


def test_labels_survive_serialization():
    text = _document(labels=["temperatura", "pressione"])
    system, costs = load_system(text)
    assert system.labels == ("temperatura", "pressione")
    assert json.loads(serialize_system(system, costs))["labels"] == ["temperatura", "pressione"]


def test_digest_is_stable_and_content_sensitive():
    system, costs = load_example("two_node")
    assert instance_digest(system, costs) == instance_digest(*load_system(serialize_system(system, costs, indent=4)))
    changed = CostMatrix.from_rows([[1, 2], [3, 2]])
    assert instance_digest(system, changed) != instance_digest(system, costs)


def test_cost_matrix_is_read_only():
    costs = CostMatrix.from_rows([[1.5, None], [0.0, 2.0]])
    assert not costs.is_integral
    with pytest.raises(ValueError):
        costs.values[0, 0] = 7.0
    assert costs.max_realizable() == 2.0
    assert costs.total_realizable() == 3.5


def test_huge_integer_costs_switch_to_floating_point():
    _, costs = load_system(_document(m=2, costs=[[10 ** 19, 1], [1, 2]]))
    assert not costs.is_integral
    assert costs.values[0, 0] == 1e19
    assert costs.total_realizable() == pytest.approx(1e19)

    # Ogni valore entra in int64 ma la somma supera il limite esatto
    assert not CostMatrix.from_rows([[2 ** 52, 2 ** 52, 2 ** 52]]).is_integral
    assert CostMatrix.from_rows([[2 ** 52, 1]]).is_integral

    wide = CostMatrix(np.ma.MaskedArray(np.array([[2 ** 62, 2 ** 62]], dtype=np.int64), mask=False))
    assert not wide.is_integral
    assert wide.total_realizable() == 2.0 ** 63


def test_measurement_structure():
    measurement = MeasurementStructure(n=3, picks=(2, None, 3))
    assert measurement.m == 3
    assert not measurement.is_complete
    assert measurement.measured_states == frozenset({2, 3})
    assert measurement.to_matrix().tolist() == [[0, 1, 0], [0, 0, 0], [0, 0, 1]]

    costs = CostMatrix.from_rows([[1, 4, 2], [1, 1, 1], [None, 5, 7]])
    assert measurement.cost_under(costs) == 11

    with pytest.raises(InstanceValidationError, match="more than one sensor"):
        MeasurementStructure(n=3, picks=(1, 1))
    with pytest.raises(InstanceValidationError):
        MeasurementStructure(n=3, picks=(4,))


def test_relabel_moves_edges_and_labels():
    system = StructuredSystem.from_edges(3, [(1, 2), (2, 3), (3, 1)])
    relabelled = system.relabel([2, 3, 1])
    assert relabelled.edges == frozenset({(2, 3), (3, 1), (1, 2)})
    assert relabelled.labels == ("x3", "x1", "x2")


def test_bundled_fixtures_are_listed():
    names = {entry["id"] for entry in get_example_names()}
    assert {"example1", "acyclic_chain", "two_node", "uncoverable_parent",
            "hall_violation", "insufficient_sensors"} <= names
    with pytest.raises(KeyError):
        get_example_text("missing")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
