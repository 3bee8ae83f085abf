#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Esito di fattibilità dell'assegnamento e costruzione della struttura di misura.

Un assegnamento ottimo che seleziona una voce di pseudo-costo segnala che
nessuna selezione di sensori copre tutte le SCC parent. In quel caso il modulo
indica le SCC parent che nessun sensore può realizzare oppure, se ognuna è
realizzabile da qualche sensore, il gruppo di SCC parent che viola la
condizione di Hall (più SCC che sensori in grado di realizzarle).
"""

from dataclasses import dataclass
from typing import TYPE_CHECKING, FrozenSet, Optional, Sequence, Tuple

import numpy as np
from scipy import sparse
from scipy.sparse.csgraph import maximum_bipartite_matching

from digraph.schema import MeasurementStructure
from .cost_model import AssignmentError, AssignmentInputError, ReducedCostMatrix

if TYPE_CHECKING:
    from .hungarian import AssignmentSolution


class InfeasibleAssignmentError(AssignmentError):
    """Eccezione per operazioni che richiedono una soluzione fattibile"""
    pass


@dataclass(frozen=True)
class HallViolation:
    """Gruppo di SCC parent realizzabili da meno sensori del necessario"""
    parent_columns: Tuple[int, ...]
    sensors: Tuple[int, ...]


@dataclass(frozen=True)
class FeasibilityVerdict:
    """Esito di fattibilità con le SCC parent non copribili"""
    feasible: bool
    uncoverable_columns: Tuple[int, ...] = ()
    uncoverable_parents: Tuple[FrozenSet[int], ...] = ()
    hall_violation: Optional[HallViolation] = None
    message: str = "feasible"


def _format_parent(parent: FrozenSet[int]) -> str:
    return "{" + ",".join(f"x{node}" for node in sorted(parent)) + "}"


def _hall_violation(realizable: np.ndarray) -> Optional[HallViolation]:
    """Ricerca alternante di König a partire da una SCC parent non accoppiata"""
    sensors, parents = realizable.shape
    graph = sparse.csr_matrix(realizable.T.astype(np.int8))
    sensor_of_parent = maximum_bipartite_matching(graph, perm_type="column")
    unmatched = np.flatnonzero(sensor_of_parent < 0)
    if len(unmatched) == 0:
        return None

    parent_of_sensor = np.full(sensors, -1, dtype=np.int64)
    for parent, sensor in enumerate(sensor_of_parent):
        if sensor >= 0:
            parent_of_sensor[sensor] = parent

    group = {int(unmatched[0])}
    reached = set()
    frontier = [int(unmatched[0])]
    while frontier:
        parent = frontier.pop()
        for sensor in np.flatnonzero(realizable[:, parent]):
            sensor = int(sensor)
            if sensor in reached:
                continue
            reached.add(sensor)
            partner = int(parent_of_sensor[sensor])
            if partner >= 0 and partner not in group:
                group.add(partner)
                frontier.append(partner)
    return HallViolation(parent_columns=tuple(sorted(group)), sensors=tuple(sorted(reached)))


def feasibility_verdict(solution: "AssignmentSolution", reduced: ReducedCostMatrix) -> FeasibilityVerdict:
    """
    Determina la fattibilità della soluzione.

    Args:
        solution: Soluzione prodotta da solve_lsap sulla stessa matrice
        reduced: Matrice ridotta

    Returns:
        FeasibilityVerdict: Fattibile, oppure le SCC parent non copribili

    Raises:
        AssignmentInputError: Se soluzione e matrice non sono coerenti
    """
    if len(solution.permutation) != reduced.m or sorted(solution.permutation) != list(range(reduced.m)):
        raise AssignmentInputError("solution permutation does not match the reduced cost matrix")

    rows = np.arange(reduced.m)
    selected_pseudo = reduced.is_pseudo[rows, np.asarray(solution.permutation)]
    if not selected_pseudo.any():
        return FeasibilityVerdict(feasible=True)

    real = reduced.is_pseudo[:, :reduced.p]
    columns = tuple(int(column) for column in np.flatnonzero(real.all(axis=0)))
    if columns:
        parents = tuple(reduced.parents[column] for column in columns)
        names = ", ".join(_format_parent(parent) for parent in parents)
        return FeasibilityVerdict(
            feasible=False,
            uncoverable_columns=columns,
            uncoverable_parents=parents,
            message=f"infeasible: no sensor can realize parent SCC {names}",
        )

    violation = _hall_violation(~real)
    if violation is None:
        return FeasibilityVerdict(feasible=False, message="infeasible: a pseudo-cost entry was selected")
    parents = tuple(reduced.parents[column] for column in violation.parent_columns)
    names = ", ".join(_format_parent(parent) for parent in parents)
    sensors = ", ".join(str(sensor + 1) for sensor in violation.sensors)
    return FeasibilityVerdict(
        feasible=False,
        uncoverable_columns=violation.parent_columns,
        uncoverable_parents=parents,
        hall_violation=violation,
        message=f"infeasible: parent SCCs {names} can only be realized by sensors [{sensors}]",
    )


def assemble_measurement(permutation: Sequence[int], reduced: ReducedCostMatrix) -> MeasurementStructure:
    """
    Compone la permutazione con la provenienza degli argmin.

    Args:
        permutation: Colonna (0-based) assegnata a ogni sensore
        reduced: Matrice ridotta

    Returns:
        MeasurementStructure: Stato misurato da ogni sensore; i sensori sulle
            colonne fittizie restano non assegnati

    Raises:
        AssignmentInputError: Se la permutazione non ha la dimensione della matrice
        InfeasibleAssignmentError: Se la permutazione seleziona uno pseudo-costo
    """
    if len(permutation) != reduced.m:
        raise AssignmentInputError(f"permutation has {len(permutation)} entries, expected {reduced.m}")
    picks = []
    for sensor, column in enumerate(permutation):
        if reduced.is_pseudo[sensor, column]:
            raise InfeasibleAssignmentError(
                f"sensor {sensor + 1} is assigned to parent SCC {column + 1}, which it cannot realize"
            )
        picks.append(reduced.argmin_state[sensor][column])
    return MeasurementStructure(n=reduced.n_states, picks=tuple(picks))
