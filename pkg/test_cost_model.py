#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Test della riduzione dei costi alle SCC parent
"""

import os
import sys

# Assicurati che la directory principale sia nel path per importare i moduli
current_dir = os.path.dirname(os.path.abspath(__file__))
if current_dir not in sys.path:
    sys.path.insert(0, current_dir)

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from assignment import AssignmentInputError, InsufficientSensorsError, pseudo_cost_for, reduce_costs, solve_lsap
from config import Config
from digraph import CostMatrix


@st.composite
def reduction_inputs(draw):
    """Matrice dei costi interi con marcatori e una partizione degli stati in SCC parent"""
    n = draw(st.integers(min_value=1, max_value=7))
    p = draw(st.integers(min_value=1, max_value=n))
    m = draw(st.integers(min_value=p, max_value=p + 2))
    rows = []
    for _ in range(m):
        row = draw(st.lists(st.one_of(st.none(), st.integers(min_value=0, max_value=50)), min_size=n, max_size=n))
        if all(value is None for value in row):
            row[draw(st.integers(min_value=0, max_value=n - 1))] = draw(st.integers(min_value=0, max_value=50))
        rows.append(row)
    order = draw(st.permutations(list(range(1, n + 1))))
    cuts = sorted(draw(st.permutations(list(range(1, n))))[:p - 1])
    bounds = [0] + cuts + [n]
    parents = [frozenset(order[a:b]) for a, b in zip(bounds, bounds[1:])]
    return CostMatrix.from_rows(rows), parents


def test_singleton_parents_copy_costs():
    reduced = reduce_costs(CostMatrix.from_rows([[3, 7], [4, 1]]), [frozenset({1}), frozenset({2})])
    assert reduced.values.tolist() == [[3, 7], [4, 1]]
    assert not reduced.is_pseudo.any()
    assert reduced.argmin_state == ((1, 2), (1, 2))
    assert reduced.is_integral


def test_minimum_over_scc_members():
    reduced = reduce_costs(CostMatrix.from_rows([[5, 2, 9], [8, 6, 1]]), [frozenset({1, 2}), frozenset({3})])
    assert reduced.values.tolist() == [[2, 9], [6, 1]]
    assert reduced.argmin_state[0][0] == 2
    assert reduced.argmin_state[1][0] == 2
    assert reduced.argmin_state[1][1] == 3


def test_pseudo_cost_formula():
    reduced = reduce_costs(CostMatrix.from_rows([[3, None], [None, 1]]), [frozenset({1}), frozenset({2})])
    assert reduced.pseudo_cost == 12
    assert reduced.values.tolist() == [[3, 12], [12, 1]]
    assert reduced.is_pseudo.tolist() == [[False, True], [True, False]]
    assert reduced.argmin_state == ((1, None), (None, 2))


def test_pseudo_cost_floor_for_zero_costs():
    costs = CostMatrix.from_rows([[0, 0], [0, None]])
    assert pseudo_cost_for(costs) == int(Config.PSEUDO_COST_FLOOR)

    real = CostMatrix.from_rows([[0.0, None]])
    assert pseudo_cost_for(real) == Config.PSEUDO_COST_FLOOR


def test_pseudo_cost_dominates_single_entry():
    # max·m·n = 5 non domina la somma 5: serve il minimo aggiuntivo
    costs = CostMatrix.from_rows([[5]])
    assert pseudo_cost_for(costs) == 5 + int(Config.PSEUDO_COST_FLOOR)


def test_large_pseudo_cost_switches_to_floating_point():
    costs = CostMatrix.from_rows([[2 ** 51, None], [None, 1]])
    assert costs.is_integral
    # Lo pseudo-costo 2^53 per due righe supera il limite esatto
    reduced = reduce_costs(costs, [frozenset({1}), frozenset({2})])
    assert not reduced.is_integral
    assert reduced.pseudo_cost == 2.0 ** 53
    assert reduced.is_pseudo.tolist() == [[False, True], [True, False]]

    solution = solve_lsap(reduced)
    assert solution.feasible
    assert solution.total_cost == 2 ** 51 + 1
    assert solution.measurement.picks == (1, 2)


def test_ties_go_to_lowest_state_index():
    reduced = reduce_costs(CostMatrix.from_rows([[4, 2, 2]]), [frozenset({3, 2, 1})])
    assert reduced.argmin_state == ((2,),)


def test_dummy_columns_for_surplus_sensors():
    reduced = reduce_costs(CostMatrix.from_rows([[1, 2], [3, 4], [5, 6]]), [frozenset({1, 2})])
    assert reduced.m == 3 and reduced.p == 1
    assert reduced.is_dummy == (False, True, True)
    assert reduced.values[:, 1:].tolist() == [[0, 0], [0, 0], [0, 0]]
    assert not reduced.is_pseudo[:, 1:].any()
    assert reduced.argmin_state[0][1] is None


def test_insufficient_sensors():
    with pytest.raises(InsufficientSensorsError, match="insufficient sensors for observability: m=1 < 2"):
        reduce_costs(CostMatrix.from_rows([[1, 1]]), [frozenset({1}), frozenset({2})])


def test_invalid_parents():
    costs = CostMatrix.from_rows([[1, 1]])
    with pytest.raises(AssignmentInputError):
        reduce_costs(costs, [])
    with pytest.raises(AssignmentInputError):
        reduce_costs(costs, [frozenset({3})])


def test_reduced_matrix_is_read_only():
    reduced = reduce_costs(CostMatrix.from_rows([[1]]), [frozenset({1})])
    with pytest.raises(ValueError):
        reduced.values[0, 0] = 0


@settings(max_examples=1000, deadline=None)
@given(reduction_inputs())
def test_provenance_soundness(inputs):
    costs, parents = inputs
    reduced = reduce_costs(costs, parents)
    assert reduced.pseudo_cost > costs.total_realizable()
    for sensor in range(reduced.m):
        for column, parent in enumerate(parents):
            realizable = [state for state in parent if costs.cost(sensor, state) is not None]
            if not realizable:
                assert reduced.is_pseudo[sensor, column]
                assert reduced.entry(sensor, column) == reduced.pseudo_cost
                continue
            state = reduced.argmin_state[sensor][column]
            assert state in parent
            assert costs.cost(sensor, state) == reduced.entry(sensor, column)
            assert all(reduced.entry(sensor, column) <= costs.cost(sensor, other) for other in realizable)
            cheaper_lower = [other for other in realizable if other < state and costs.cost(sensor, other) == costs.cost(sensor, state)]
            assert not cheaper_lower


@settings(max_examples=300, deadline=None)
@given(reduction_inputs(), st.randoms(use_true_random=False))
def test_member_order_does_not_matter(inputs, random):
    costs, parents = inputs
    shuffled = []
    for parent in parents:
        members = sorted(parent)
        random.shuffle(members)
        shuffled.append(members)
    first = reduce_costs(costs, parents)
    second = reduce_costs(costs, shuffled)
    assert np.array_equal(first.values, second.values)
    assert first.argmin_state == second.argmin_state


def test_adding_a_realizable_state_never_increases_costs():
    costs = CostMatrix.from_rows([[5, 2, 9, 1], [8, 6, 1, 7]])
    narrow = reduce_costs(costs, [frozenset({1, 2}), frozenset({3})])
    wide = reduce_costs(costs, [frozenset({1, 2}), frozenset({3, 4})])
    assert np.all(wide.values <= narrow.values)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
