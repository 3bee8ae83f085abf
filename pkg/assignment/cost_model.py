#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Riduzione dei costi sensore-stato ai costi sensore-SCC parent.

Il costo di assegnare la SCC parent j al sensore i è il minimo costo
realizzabile del sensore sugli stati di quella SCC. Le coppie senza alcuno stato
realizzabile ricevono uno pseudo-costo dominante, così che la matrice resti
completa per l'assegnamento. Con più sensori che SCC parent la matrice viene
resa quadrata con colonne fittizie a costo zero.
"""

import logging
from dataclasses import dataclass
from typing import FrozenSet, Optional, Sequence, Tuple, Union

import numpy as np

from config import Config
from digraph.schema import CostMatrix

logger = logging.getLogger(__name__)

Number = Union[int, float]


class AssignmentError(Exception):
    """Eccezione base per gli errori di riduzione e assegnamento"""
    pass


class InsufficientSensorsError(AssignmentError):
    """Eccezione per istanze con meno sensori che SCC parent"""

    def __init__(self, sensors: int, parents: int):
        self.sensors = sensors
        self.parents = parents
        super().__init__(f"insufficient sensors for observability: m={sensors} < {parents} parent SCCs")


class AssignmentInputError(AssignmentError):
    """Eccezione per input incoerenti (dimensioni, matrici non quadrate)"""
    pass


@dataclass(frozen=True, eq=False)
class ReducedCostMatrix:
    """Matrice ridotta sensori × SCC parent con provenienza degli argmin.

    Le colonne oltre la p-esima sono fittizie (m > p) e hanno costo zero.
    """
    parents: Tuple[FrozenSet[int], ...]
    values: np.ndarray
    argmin_state: Tuple[Tuple[Optional[int], ...], ...]
    is_pseudo: np.ndarray
    pseudo_cost: Number
    n_states: int

    @property
    def m(self) -> int:
        return int(self.values.shape[0])

    @property
    def p(self) -> int:
        return len(self.parents)

    @property
    def is_dummy(self) -> Tuple[bool, ...]:
        return tuple(column >= self.p for column in range(self.values.shape[1]))

    @property
    def is_integral(self) -> bool:
        return self.values.dtype.kind == "i"

    def entry(self, sensor: int, column: int) -> Number:
        return self.values[sensor, column].item()


def pseudo_cost_for(costs: CostMatrix) -> Number:
    """
    Calcola lo pseudo-costo per le coppie non realizzabili.

    Lo pseudo-costo è max(c)·m·n; quando questo non domina strettamente la somma
    dei costi realizzabili (costi tutti nulli, oppure tutti uguali con matrice
    completa) diventa somma + Config.PSEUDO_COST_FLOOR.

    Args:
        costs: Matrice dei costi sensore-stato

    Returns:
        Number: Pseudo-costo, intero se i costi sono interi
    """
    pseudo = costs.max_realizable() * costs.m * costs.n
    total = costs.total_realizable()
    if not pseudo > total:
        floor = int(Config.PSEUDO_COST_FLOOR) if costs.is_integral else Config.PSEUDO_COST_FLOOR
        logger.warning(f"Pseudo-costo {pseudo} non dominante (somma {total}): uso {total + floor}")
        pseudo = total + floor
    return pseudo


def reduce_costs(costs: CostMatrix, parents: Sequence[FrozenSet[int]]) -> ReducedCostMatrix:
    """
    Riduce la matrice dei costi alle SCC parent.

    Args:
        costs: Matrice dei costi sensore-stato (m×n)
        parents: Insiemi di stati (1-based) delle SCC parent, in ordine canonico

    Returns:
        ReducedCostMatrix: Matrice quadrata m×m con provenienza e maschera pseudo

    Raises:
        AssignmentInputError: Se parents è vuoto o contiene stati fuori dalla matrice
        InsufficientSensorsError: Se i sensori sono meno delle SCC parent
    """
    parents = tuple(frozenset(parent) for parent in parents)
    if not parents:
        raise AssignmentInputError("at least one parent SCC is required")
    for index, parent in enumerate(parents, start=1):
        if not parent:
            raise AssignmentInputError(f"parent SCC {index} is empty")
        if min(parent) < 1 or max(parent) > costs.n:
            raise AssignmentInputError(f"parent SCC {index} has states outside [1, {costs.n}]")

    m, p = costs.m, len(parents)
    if m < p:
        raise InsufficientSensorsError(m, p)

    pseudo = pseudo_cost_for(costs)
    integral = costs.is_integral
    if integral and pseudo * m > Config.INTEGER_EXACT_LIMIT:
        logger.warning(f"Pseudo-costo {pseudo} oltre il limite della modalità esatta: uso la virgola mobile")
        integral = False
        pseudo = float(pseudo)
    dtype = np.int64 if integral else np.float64
    values = np.zeros((m, m), dtype=dtype)
    is_pseudo = np.zeros((m, m), dtype=bool)
    argmin_state = [[None] * m for _ in range(m)]

    for column, parent in enumerate(parents):
        members = np.array(sorted(parent), dtype=np.int64)
        block = np.ma.MaskedArray(costs.values[:, members - 1], mask=~costs.realizable[:, members - 1])
        # argmin sugli stati ordinati: a parità vince l'indice di stato minore
        best = block.argmin(axis=1)
        covered = costs.realizable[:, members - 1].any(axis=1)
        for sensor in range(m):
            if covered[sensor]:
                state = int(members[best[sensor]])
                values[sensor, column] = costs.values[sensor, state - 1]
                argmin_state[sensor][column] = state
            else:
                values[sensor, column] = pseudo
                is_pseudo[sensor, column] = True

    if m > p:
        logger.info(f"Aggiunte {m - p} colonne fittizie: {m - p} sensori resteranno non assegnati")

    values.setflags(write=False)
    is_pseudo.setflags(write=False)
    return ReducedCostMatrix(
        parents=parents,
        values=values,
        argmin_state=tuple(tuple(row) for row in argmin_state),
        is_pseudo=is_pseudo,
        pseudo_cost=pseudo,
        n_states=costs.n,
    )
