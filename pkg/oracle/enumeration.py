#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Oracolo a forza bruta per la selezione dei sensori.

Enumera tutte le selezioni realizzabili (ogni sensore su uno stato realizzabile,
stati distinti) e le separa in osservabili, quelle che misurano almeno uno
stato in ogni SCC parent, e non osservabili. Con più sensori che SCC parent un
sensore può anche restare non assegnato. La complessità è esponenziale: serve
solo a verificare il risolutore su istanze piccole.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np

from config import Config
from digraph.schema import CostMatrix, MeasurementStructure, StructuredSystem
from structural.scc import parent_sccs, scc_decompose

logger = logging.getLogger(__name__)

Number = Union[int, float]


class OracleError(Exception):
    """Eccezione base per l'oracolo e il generatore di istanze"""
    pass


class OracleSizeError(OracleError):
    """Eccezione per istanze oltre i limiti dell'enumerazione"""
    pass


@dataclass(frozen=True)
class EnumerationReport:
    """Costi di tutte le selezioni realizzabili, osservabili e non"""
    observable_selections: Tuple[Tuple[MeasurementStructure, Number], ...]
    non_observable_selections: Tuple[Tuple[MeasurementStructure, Number], ...]
    min_observable_cost: Optional[Number]
    observable_count: int
    non_observable_count: int


def _check_bounds(m: int, n: int, max_sensors: int, max_states: int) -> None:
    if m > max_sensors or n > max_states:
        raise OracleSizeError(
            f"instance too large for enumeration: m={m}, n={n} (caps m <= {max_sensors}, n <= {max_states})"
        )


def enumerate_all(
    system: StructuredSystem,
    costs: CostMatrix,
    keep_selections: bool = True,
    max_sensors: int = Config.ORACLE_MAX_SENSORS,
    max_states: int = Config.ORACLE_MAX_STATES,
    max_selections: int = Config.ORACLE_MAX_SELECTIONS,
) -> EnumerationReport:
    """
    Enumera tutte le selezioni realizzabili.

    Args:
        system: Sistema strutturato
        costs: Matrice dei costi sensore-stato
        keep_selections: Se conservare le singole selezioni nel report
            (altrimenti solo conteggi e costo minimo)
        max_sensors: Limite sul numero di sensori
        max_states: Limite sul numero di stati
        max_selections: Limite sul numero di combinazioni da esaminare

    Returns:
        EnumerationReport: Selezioni in ordine di costo crescente

    Raises:
        OracleError: Se sistema e costi hanno dimensioni diverse
        OracleSizeError: Se l'istanza supera i limiti dell'enumerazione
    """
    if costs.n != system.n:
        raise OracleError(f"dimension mismatch: system has n={system.n}, costs have n={costs.n}")
    m, n = costs.m, costs.n
    _check_bounds(m, n, max_sensors, max_states)

    parents = parent_sccs(scc_decompose(system))
    parent_bit = np.zeros(n + 1, dtype=np.int64)
    for index, parent in enumerate(parents):
        for state in parent:
            parent_bit[state] = 1 << index
    full_cover = (1 << len(parents)) - 1
    allow_unassigned = m > len(parents)

    # Candidati per sensore: stati realizzabili (1-based), 0 = non assegnato
    candidates = []
    for sensor in range(m):
        states = [int(l) + 1 for l in np.flatnonzero(costs.realizable[sensor])]
        if allow_unassigned:
            states = [0] + states
        candidates.append(np.array(states, dtype=np.int64))
    shape = tuple(len(options) for options in candidates)
    total = int(np.prod(shape, dtype=np.float64))
    if total > max_selections:
        raise OracleSizeError(f"instance too large for enumeration: {total} selections (cap {max_selections})")

    index = np.indices(shape).reshape(m, -1).T
    states = np.stack([candidates[sensor][index[:, sensor]] for sensor in range(m)], axis=1)

    ordered = np.sort(states, axis=1)
    duplicated = ((ordered[:, 1:] == ordered[:, :-1]) & (ordered[:, 1:] > 0)).any(axis=1) if m > 1 else np.zeros(len(states), dtype=bool)
    states = states[~duplicated]

    cost_table = np.zeros((m, n + 1), dtype=costs.values.dtype)
    cost_table[:, 1:] = costs.values
    totals = cost_table[np.arange(m)[None, :], states].sum(axis=1)
    cover = np.bitwise_or.reduce(parent_bit[states], axis=1)
    observable = cover == full_cover

    observable_count = int(observable.sum())
    min_cost = totals[observable].min().item() if observable_count else None
    logger.info(f"Oracolo: {len(states)} selezioni, {observable_count} osservabili, minimo {min_cost}")

    if not keep_selections:
        return EnumerationReport((), (), min_cost, observable_count, int(len(states) - observable_count))

    def collect(selector: np.ndarray) -> Tuple[Tuple[MeasurementStructure, Number], ...]:
        chosen_states = states[selector]
        chosen_totals = totals[selector]
        # Ordine: costo crescente, poi selezione lessicografica
        keys = [chosen_states[:, column] for column in reversed(range(m))] + [chosen_totals]
        order = np.lexsort(keys)
        return tuple(
            (MeasurementStructure(n=n, picks=tuple(int(s) if s else None for s in chosen_states[row])), chosen_totals[row].item())
            for row in order
        )

    return EnumerationReport(
        observable_selections=collect(observable),
        non_observable_selections=collect(~observable),
        min_observable_cost=min_cost,
        observable_count=observable_count,
        non_observable_count=int(len(states) - observable_count),
    )


def enumerate_bijections(values: np.ndarray, tolerance: float = Config.TOLERANCE,
                         max_sensors: int = Config.ORACLE_MAX_SENSORS) -> Tuple[Number, Tuple[int, ...]]:
    """
    Minimo su tutte le m! biiezioni di una matrice quadrata.

    Args:
        values: Matrice quadrata dei costi
        tolerance: Tolleranza per riconoscere le permutazioni ottime (costi reali)
        max_sensors: Limite sulla dimensione

    Returns:
        Tuple: costo minimo e permutazione ottima lessicograficamente minima
    """
    values = np.asarray(values)
    size = values.shape[0]
    _check_bounds(size, size, max_sensors, max_sensors)
    permutations = np.array(list(itertools.permutations(range(size))), dtype=np.int64)
    totals = values[np.arange(size)[None, :], permutations].sum(axis=1)
    best = totals.min()
    if values.dtype.kind in "iu":
        first = int(np.flatnonzero(totals == best)[0])
    else:
        first = int(np.flatnonzero(totals <= best + tolerance)[0])
    return best.item(), tuple(int(c) for c in permutations[first])
