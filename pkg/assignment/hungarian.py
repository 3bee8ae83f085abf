#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Metodo ungherese per il Linear Sum Assignment Problem.

Implementa la variante O(m³) a cammini aumentanti con potenziali duali: i
potenziali partono dalla riduzione per righe e per colonne della matrice, poi
ogni riga viene inserita con un cammino aumentante di costo ridotto minimo. La
permutazione ottima finale viene resa canonica (la lessicograficamente minima
tra le ottime) sul sottografo degli archi stretti dei duali.
"""

import logging
from collections import deque
from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np

from config import Config
from digraph.schema import MeasurementStructure
from .cost_model import AssignmentInputError, ReducedCostMatrix
from .feasibility import assemble_measurement

logger = logging.getLogger(__name__)

Number = Union[int, float]


@dataclass(frozen=True)
class AssignmentSolution:
    """Soluzione dell'assegnamento sensori → SCC parent con certificati duali"""
    permutation: Tuple[int, ...]  # permutation[i] = colonna (0-based) assegnata al sensore i
    measurement: Optional[MeasurementStructure]
    total_cost: Number
    feasible: bool
    row_duals: Tuple[Number, ...]
    col_duals: Tuple[Number, ...]

    @property
    def dual_objective(self) -> Number:
        return sum(self.row_duals) + sum(self.col_duals)


def _potentials_assignment(cost: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Cammini aumentanti con potenziali su una matrice quadrata.

    Args:
        cost: Matrice quadrata dei costi (int64 o float64)

    Returns:
        Tuple: permutazione riga → colonna, potenziali di riga u, potenziali di colonna v
    """
    size = cost.shape[0]
    integral = cost.dtype.kind == "i"
    dtype = np.int64 if integral else np.float64
    inf = np.iinfo(np.int64).max // 4 if integral else np.inf

    # Potenziali 1-based: l'indice 0 è la colonna fittizia di partenza
    u = np.zeros(size + 1, dtype=dtype)
    v = np.zeros(size + 1, dtype=dtype)
    # Riduzione per righe e per colonne come inizializzazione
    u[1:] = cost.min(axis=1)
    v[1:] = (cost - u[1:, None]).min(axis=0)

    owner = np.zeros(size + 1, dtype=np.int64)  # owner[j] = riga (1-based) sulla colonna j, 0 se libera
    way = np.zeros(size + 1, dtype=np.int64)

    for row in range(1, size + 1):
        owner[0] = row
        j0 = 0
        minv = np.full(size + 1, inf, dtype=dtype)
        used = np.zeros(size + 1, dtype=bool)
        while True:
            used[j0] = True
            i0 = owner[j0]
            free = ~used[1:]
            reduced = cost[i0 - 1] - u[i0] - v[1:]
            better = free & (reduced < minv[1:])
            minv[1:][better] = reduced[better]
            way[1:][better] = j0
            candidates = np.where(free, minv[1:], inf)
            j1 = int(np.argmin(candidates)) + 1
            delta = candidates[j1 - 1]
            u[owner[used]] += delta
            v[used] -= delta
            minv[1:][free] -= delta
            j0 = j1
            if owner[j0] == 0:
                break
        # Inversione degli archi lungo il cammino aumentante
        while j0:
            j1 = way[j0]
            owner[j0] = owner[j1]
            j0 = j1

    permutation = np.empty(size, dtype=np.int64)
    permutation[owner[1:] - 1] = np.arange(size)
    return permutation, u[1:], v[1:]


def _lexicographic_optimum(cost: np.ndarray, permutation: np.ndarray, u: np.ndarray, v: np.ndarray,
                           tolerance: float) -> np.ndarray:
    """
    Porta una permutazione ottima alla lessicograficamente minima tra le ottime.

    Le permutazioni ottime sono esattamente i matching perfetti sugli archi
    stretti (u_i + v_j = C_ij) di duali ottimi: riga per riga si fissa la
    colonna stretta più piccola per cui resta un matching perfetto.
    """
    size = cost.shape[0]
    slack = cost - u[:, None] - v[None, :]
    tight = slack == 0 if cost.dtype.kind == "i" else slack <= tolerance
    tight_columns = [np.flatnonzero(tight[row]) for row in range(size)]

    permutation = permutation.copy()
    owner = np.empty(size, dtype=np.int64)
    owner[permutation] = np.arange(size)
    fixed = np.zeros(size, dtype=bool)

    for row in range(size):
        current = int(permutation[row])
        for column in tight_columns[row]:
            column = int(column)
            if column >= current:
                break
            if fixed[column]:
                continue
            # Il proprietario di `column` deve raggiungere `current` con un cammino alternante
            start = int(owner[column])
            reached_by = {}
            queue = deque([start])
            visited_rows = {start}
            found = False
            while queue and not found:
                r = queue.popleft()
                for c in tight_columns[r]:
                    c = int(c)
                    if fixed[c] or c == column or c in reached_by:
                        continue
                    reached_by[c] = r
                    if c == current:
                        found = True
                        break
                    nxt = int(owner[c])
                    if nxt not in visited_rows:
                        visited_rows.add(nxt)
                        queue.append(nxt)
            if not found:
                continue
            c = current
            while True:
                r = reached_by[c]
                previous = int(permutation[r])
                permutation[r] = c
                owner[c] = r
                if r == start:
                    break
                c = previous
            permutation[row] = column
            owner[column] = row
            break
        fixed[permutation[row]] = True
    return permutation


def solve_assignment(cost: np.ndarray, tolerance: float = Config.TOLERANCE) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Risolve un LSAP quadrato con certificati duali.

    Args:
        cost: Matrice quadrata dei costi
        tolerance: Tolleranza additiva per gli archi stretti (costi reali)

    Returns:
        Tuple: permutazione lessicograficamente minima tra le ottime, u, v

    Raises:
        AssignmentInputError: Se la matrice non è quadrata o non è finita
    """
    cost = np.asarray(cost)
    if cost.ndim != 2 or cost.shape[0] != cost.shape[1] or cost.shape[0] == 0:
        raise AssignmentInputError(f"cost matrix must be square and non-empty, got shape {cost.shape}")
    if cost.dtype.kind in "iub":
        cost = cost.astype(np.int64)
    else:
        cost = cost.astype(np.float64)
        if not np.all(np.isfinite(cost)):
            raise AssignmentInputError("cost matrix entries must be finite")

    permutation, u, v = _potentials_assignment(cost)
    permutation = _lexicographic_optimum(cost, permutation, u, v, tolerance)
    return permutation, u, v


def solve_lsap(reduced: ReducedCostMatrix, tolerance: float = Config.TOLERANCE) -> AssignmentSolution:
    """
    Risolve l'assegnamento sensori → SCC parent.

    Args:
        reduced: Matrice ridotta quadrata m×m
        tolerance: Tolleranza additiva sui certificati duali

    Returns:
        AssignmentSolution: Permutazione ottima, struttura di misura (se fattibile),
            costo totale, esito di fattibilità e potenziali duali
    """
    permutation, u, v = solve_assignment(reduced.values, tolerance)
    rows = np.arange(reduced.m)
    total = reduced.values[rows, permutation].sum().item()
    feasible = not bool(reduced.is_pseudo[rows, permutation].any())
    measurement = assemble_measurement(tuple(int(c) for c in permutation), reduced) if feasible else None
    logger.info(f"LSAP risolto: m={reduced.m}, costo={total}, fattibile={feasible}")
    return AssignmentSolution(
        permutation=tuple(int(c) for c in permutation),
        measurement=measurement,
        total_cost=total,
        feasible=feasible,
        row_duals=tuple(value.item() for value in u),
        col_duals=tuple(value.item() for value in v),
    )
