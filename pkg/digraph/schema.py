#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Schema delle istanze di selezione dei sensori.

Questo modulo definisce la rappresentazione strutturata del sistema dinamico
(il pattern zero/non-zero della matrice di stato, tenuto come digrafo sugli
stati), la matrice dei costi sensore-stato con i marcatori di non realizzabilità
e la struttura di misura che assegna gli stati ai sensori.

Convenzioni sugli indici: gli identificativi degli stati sono 1-based (x1…xn),
come nel formato JSON e nella CLI; righe (sensori) e colonne delle matrici sono
posizioni 0-based, quindi la colonna l corrisponde allo stato x_{l+1}.
"""

import logging
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import sparse

from config import Config

logger = logging.getLogger(__name__)

Number = Union[int, float]
Edge = Tuple[int, int]


class InstanceError(Exception):
    """Eccezione base per gli errori sulle istanze"""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.message = message
        self.line = line
        self.column = column
        if line is not None:
            anchor = f"line {line}" if column is None else f"line {line}, column {column}"
            message = f"{anchor}: {message}"
        super().__init__(message)


class InstanceValidationError(InstanceError):
    """Eccezione per istanze sintatticamente valide ma incoerenti"""
    pass


@dataclass(frozen=True)
class StructuredSystem:
    """Pattern strutturale della matrice di stato come digrafo sugli stati.

    Un arco (j, i) rappresenta x_j → x_i ed è presente se e solo se l'elemento
    A_ij è un non-zero strutturale. I self-loop sono ammessi.
    """
    n: int
    edges: FrozenSet[Edge]
    labels: Tuple[str, ...] = field(default=())

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise InstanceValidationError(f"n must be a positive integer, got {self.n!r}")
        edges = frozenset((int(j), int(i)) for j, i in self.edges)
        for j, i in edges:
            if not (1 <= j <= self.n and 1 <= i <= self.n):
                raise InstanceValidationError(f"edge ({j}, {i}) out of range [1, {self.n}]")
        object.__setattr__(self, "edges", edges)

        labels = tuple(self.labels) if self.labels else tuple(f"x{k}" for k in range(1, self.n + 1))
        if len(labels) != self.n:
            raise InstanceValidationError(f"expected {self.n} labels, got {len(labels)}")
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], labels: Optional[Sequence[str]] = None) -> "StructuredSystem":
        """Crea un sistema da una lista di coppie (da, a) 1-based"""
        return cls(n=n, edges=frozenset((int(e[0]), int(e[1])) for e in edges), labels=tuple(labels or ()))

    @cached_property
    def _successors(self) -> Dict[int, FrozenSet[int]]:
        successors: Dict[int, set] = {node: set() for node in range(1, self.n + 1)}
        for j, i in self.edges:
            successors[j].add(i)
        return {node: frozenset(targets) for node, targets in successors.items()}

    @cached_property
    def digraph_matrix(self) -> sparse.csr_matrix:
        """Matrice di adiacenza del digrafo: G[j-1, i-1] = 1 per ogni arco x_j → x_i"""
        if not self.edges:
            return sparse.csr_matrix((self.n, self.n), dtype=np.int8)
        sources, targets = zip(*self.edges)
        data = np.ones(len(sources), dtype=np.int8)
        matrix = sparse.coo_matrix(
            (data, (np.asarray(sources) - 1, np.asarray(targets) - 1)), shape=(self.n, self.n)
        )
        return matrix.tocsr()

    @cached_property
    def structure_matrix(self) -> sparse.csr_matrix:
        """Matrice strutturata A (righe i, colonne j): trasposta del digrafo"""
        return self.digraph_matrix.transpose().tocsr()

    def out_neighbors(self, j: int) -> FrozenSet[int]:
        return out_neighbors(self, j)

    def has_self_loop(self, j: int) -> bool:
        return (j, j) in self.edges

    def dense_structure(self) -> np.ndarray:
        """Rendering denso 0/1 della matrice strutturata A"""
        return self.structure_matrix.toarray().astype(np.int8)

    def relabel(self, permutation: Sequence[int]) -> "StructuredSystem":
        """Applica la rietichettatura x_k → x_{permutation[k-1]}"""
        if sorted(permutation) != list(range(1, self.n + 1)):
            raise InstanceValidationError("relabelling must be a permutation of 1..n")
        mapping = {old: new for old, new in zip(range(1, self.n + 1), permutation)}
        labels = [""] * self.n
        for old, new in mapping.items():
            labels[new - 1] = self.labels[old - 1]
        return StructuredSystem(
            n=self.n,
            edges=frozenset((mapping[j], mapping[i]) for j, i in self.edges),
            labels=tuple(labels),
        )


def out_neighbors(system: StructuredSystem, j: int) -> FrozenSet[int]:
    """
    Restituisce i successori diretti di uno stato.

    Args:
        system: Sistema strutturato
        j: Stato (1-based)

    Returns:
        FrozenSet[int]: Insieme { i : (j, i) ∈ archi }

    Raises:
        InstanceValidationError: Se j è fuori dall'intervallo [1, n]
    """
    if isinstance(j, bool) or not isinstance(j, (int, np.integer)) or not 1 <= j <= system.n:
        raise InstanceValidationError(f"state index {j!r} out of range [1, {system.n}]")
    return system._successors[int(j)]


@dataclass(frozen=True, eq=False)
class CostMatrix:
    """Costi sensore-stato c (m×n) con marcatori di non realizzabilità.

    Le voci mascherate di `entries` sono le coppie non realizzabili: il loro
    valore sottostante non ha significato e non viene mai letto.
    """
    entries: np.ma.MaskedArray

    def __post_init__(self):
        entries = self.entries
        if not isinstance(entries, np.ma.MaskedArray):
            entries = np.ma.MaskedArray(np.asarray(entries), mask=False)
        if entries.ndim != 2 or entries.shape[0] < 1 or entries.shape[1] < 1:
            raise InstanceValidationError(f"cost matrix must be a non-empty 2-D array, got shape {entries.shape}")
        mask = np.ma.getmaskarray(entries).copy()
        data = np.ma.getdata(entries).copy()
        data[mask] = 0

        if data.dtype.kind not in "iuf":
            raise InstanceValidationError(f"costs must be numeric, got dtype {data.dtype}")
        if data.dtype.kind in "iu" and not fits_integer_mode(data[~mask].tolist()):
            logger.warning("Costi interi oltre il limite della modalità esatta: uso la virgola mobile")
            data = data.astype(np.float64)
        elif data.dtype.kind == "u":
            data = data.astype(np.int64)
        realizable = data[~mask]
        if data.dtype.kind == "f" and not np.all(np.isfinite(realizable)):
            raise InstanceValidationError("realizable costs must be finite")
        if np.any(realizable < 0):
            raise InstanceValidationError("realizable costs must be non-negative")
        for row in range(data.shape[0]):
            if mask[row].all():
                raise InstanceValidationError(f"sensor {row + 1} has no realizable state")

        data.setflags(write=False)
        mask.setflags(write=False)
        object.__setattr__(self, "entries", np.ma.MaskedArray(data, mask=mask))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Optional[Number]]]) -> "CostMatrix":
        """Crea la matrice da righe di numeri, con None per le coppie non realizzabili"""
        if not rows or not rows[0]:
            raise InstanceValidationError("cost matrix must have at least one row and one column")
        width = len(rows[0])
        for index, row in enumerate(rows, start=1):
            if len(row) != width:
                raise InstanceValidationError(f"cost row {index} has {len(row)} entries, expected {width}")
        values = [value for row in rows for value in row if value is not None]
        integral = all(isinstance(value, (int, np.integer)) and not isinstance(value, bool) for value in values)
        if integral and not fits_integer_mode(values):
            logger.warning("Costi interi oltre il limite della modalità esatta: uso la virgola mobile")
            integral = False
        dtype = np.int64 if integral else np.float64
        mask = np.array([[value is None for value in row] for row in rows], dtype=bool)
        data = np.array([[0 if value is None else value for value in row] for row in rows], dtype=dtype)
        return cls(np.ma.MaskedArray(data, mask=mask))

    @property
    def m(self) -> int:
        return int(self.entries.shape[0])

    @property
    def n(self) -> int:
        return int(self.entries.shape[1])

    @property
    def values(self) -> np.ndarray:
        return np.ma.getdata(self.entries)

    @property
    def realizable(self) -> np.ndarray:
        """Maschera booleana m×n delle coppie realizzabili"""
        return ~np.ma.getmaskarray(self.entries)

    @property
    def is_integral(self) -> bool:
        return self.values.dtype.kind == "i"

    def cost(self, sensor: int, state: int) -> Optional[Number]:
        """Costo del sensore (0-based) sullo stato (1-based), None se non realizzabile"""
        if not self.realizable[sensor, state - 1]:
            return None
        return self.values[sensor, state - 1].item()

    def to_rows(self) -> List[List[Optional[Number]]]:
        realizable = self.realizable
        return [
            [self.values[i, l].item() if realizable[i, l] else None for l in range(self.n)]
            for i in range(self.m)
        ]

    def max_realizable(self) -> Number:
        return self.values[self.realizable].max().item()

    def total_realizable(self) -> Number:
        return self.values[self.realizable].sum().item()


@dataclass(frozen=True)
class MeasurementStructure:
    """Pattern di misura H: per ogni sensore lo stato misurato (1-based) o None"""
    n: int
    picks: Tuple[Optional[int], ...]

    def __post_init__(self):
        picks = tuple(None if pick is None else int(pick) for pick in self.picks)
        seen = set()
        for sensor, state in enumerate(picks, start=1):
            if state is None:
                continue
            if not 1 <= state <= self.n:
                raise InstanceValidationError(f"sensor {sensor} measures state {state}, out of range [1, {self.n}]")
            if state in seen:
                raise InstanceValidationError(f"state x{state} is measured by more than one sensor")
            seen.add(state)
        object.__setattr__(self, "picks", picks)

    @property
    def m(self) -> int:
        return len(self.picks)

    @property
    def is_complete(self) -> bool:
        return all(pick is not None for pick in self.picks)

    @property
    def measured_states(self) -> FrozenSet[int]:
        return frozenset(pick for pick in self.picks if pick is not None)

    def to_matrix(self) -> np.ndarray:
        """Matrice 0/1 m×n del pattern di misura"""
        matrix = np.zeros((self.m, self.n), dtype=np.int8)
        for sensor, state in enumerate(self.picks):
            if state is not None:
                matrix[sensor, state - 1] = 1
        return matrix

    def cost_under(self, costs: CostMatrix) -> Number:
        """Costo totale della misura rispetto alla matrice dei costi"""
        total = 0
        for sensor, state in enumerate(self.picks):
            if state is None:
                continue
            value = costs.cost(sensor, state)
            if value is None:
                raise InstanceValidationError(f"sensor {sensor + 1} cannot realize state x{state}")
            total += value
        return total


def is_finite_number(value) -> bool:
    """True se il valore è un numero JSON finito (bool esclusi)"""
    if isinstance(value, bool):
        return False
    if isinstance(value, int):
        return True
    return isinstance(value, float) and math.isfinite(value)


def fits_integer_mode(values: Sequence[Number]) -> bool:
    """True se la somma dei valori assoluti resta entro Config.INTEGER_EXACT_LIMIT"""
    return sum(abs(int(value)) for value in values) <= Config.INTEGER_EXACT_LIMIT
