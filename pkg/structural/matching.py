#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Rango strutturale e ciclicità strutturale.

Il rango strutturale è la cardinalità del matching massimo nel grafo bipartito
colonne/righe della matrice strutturata: un arco colonna-j → riga-i per ogni
non-zero A_ij. Il sistema è strutturalmente ciclico quando il matching è
perfetto, cioè quando una famiglia di cicli disgiunti copre tutti gli stati.
"""

import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy.sparse.csgraph import maximum_bipartite_matching

from digraph.schema import Edge, StructuredSystem

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MatchingResult:
    """Matching massimo tra copie-colonna e copie-riga degli stati"""
    size: int
    matched_pairs: Tuple[Edge, ...]  # archi (j, i) del digrafo nel matching
    n: int

    @property
    def is_perfect(self) -> bool:
        return self.size == self.n

    @property
    def deficiency(self) -> int:
        return self.n - self.size


def structural_rank(system: StructuredSystem) -> MatchingResult:
    """
    Calcola il rango strutturale con Hopcroft-Karp.

    Args:
        system: Sistema strutturato

    Returns:
        MatchingResult: Matching massimo; size è il rango strutturale
    """
    matrix = system.structure_matrix
    if matrix.nnz == 0:
        return MatchingResult(size=0, matched_pairs=(), n=system.n)

    # column_of_row[i] = colonna accoppiata alla riga i, -1 se libera
    column_of_row = maximum_bipartite_matching(matrix, perm_type="column")
    rows = np.flatnonzero(column_of_row >= 0)
    pairs = tuple(sorted((int(column_of_row[i]) + 1, int(i) + 1) for i in rows))
    logger.debug(f"Matching massimo: {len(pairs)} / {system.n}")
    return MatchingResult(size=len(pairs), matched_pairs=pairs, n=system.n)


def is_self_damped(system: StructuredSystem) -> bool:
    """True se ogni stato ha un self-loop (la diagonale è già un matching perfetto)"""
    return all(system.has_self_loop(node) for node in range(1, system.n + 1))


def is_structurally_cyclic(system: StructuredSystem) -> bool:
    """True se una famiglia di cicli disgiunti copre tutti gli stati"""
    if is_self_damped(system):
        return True
    return structural_rank(system).is_perfect
