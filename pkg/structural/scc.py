#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Decomposizione in componenti fortemente connesse (SCC).

Questo modulo calcola la partizione unica degli stati in SCC, il DAG di
condensazione e la classificazione delle SCC in parent (pozzi della
condensazione, senza archi uscenti verso altre SCC) e child. La forma canonica
ordina le componenti per membro minimo e i nodi in ordine crescente.
"""

import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Tuple

import networkx as nx
import numpy as np
from scipy.sparse.csgraph import connected_components

from digraph.schema import StructuredSystem

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SccDecomposition:
    """Partizione in SCC con condensazione e classificazione parent/child"""
    components: Tuple[Tuple[int, ...], ...]
    component_of: Dict[int, int]
    condensation_edges: FrozenSet[Tuple[int, int]]
    parent_flags: Tuple[bool, ...]

    def __hash__(self):
        return hash((self.components, self.condensation_edges, self.parent_flags))

    @property
    def count(self) -> int:
        return len(self.components)

    @property
    def parent_indices(self) -> Tuple[int, ...]:
        return tuple(index for index, flag in enumerate(self.parent_flags) if flag)

    @property
    def child_indices(self) -> Tuple[int, ...]:
        return tuple(index for index, flag in enumerate(self.parent_flags) if not flag)

    def condensation_graph(self) -> nx.DiGraph:
        """DAG di condensazione come grafo networkx (nodi = indici delle componenti)"""
        graph = nx.DiGraph()
        graph.add_nodes_from(range(self.count))
        graph.add_edges_from(sorted(self.condensation_edges))
        return graph

    def levels(self) -> List[List[int]]:
        """Generazioni topologiche della condensazione, dalle sorgenti verso i pozzi"""
        return [sorted(generation) for generation in nx.topological_generations(self.condensation_graph())]


def scc_decompose(system: StructuredSystem) -> SccDecomposition:
    """
    Calcola la decomposizione in SCC e la condensazione.

    Args:
        system: Sistema strutturato

    Returns:
        SccDecomposition: Decomposizione canonica
    """
    _, labels = connected_components(system.digraph_matrix, directed=True, connection="strong")

    # Forma canonica: componenti ordinate per membro minimo
    canonical: Dict[int, int] = {}
    for node_index, label in enumerate(labels):
        if label not in canonical:
            canonical[label] = len(canonical)
    component_index = np.array([canonical[label] for label in labels], dtype=np.int64)

    members: List[List[int]] = [[] for _ in range(len(canonical))]
    for node_index, index in enumerate(component_index):
        members[index].append(node_index + 1)
    components = tuple(tuple(group) for group in members)
    component_of = {node_index + 1: int(index) for node_index, index in enumerate(component_index)}

    # Archi di condensazione indotti dagli archi tra componenti diverse
    graph = system.digraph_matrix.tocoo()
    sources = component_index[graph.row]
    targets = component_index[graph.col]
    crossing = sources != targets
    pairs = np.unique(np.stack([sources[crossing], targets[crossing]], axis=1), axis=0) if crossing.any() else np.empty((0, 2), dtype=np.int64)
    condensation_edges = frozenset((int(a), int(b)) for a, b in pairs)

    has_outgoing = np.zeros(len(components), dtype=bool)
    if len(pairs):
        has_outgoing[pairs[:, 0]] = True
    parent_flags = tuple(bool(not flag) for flag in has_outgoing)

    logger.info(f"SCC: {len(components)} componenti, {sum(parent_flags)} parent")
    return SccDecomposition(
        components=components,
        component_of=component_of,
        condensation_edges=condensation_edges,
        parent_flags=parent_flags,
    )


def parent_sccs(decomposition: SccDecomposition) -> List[FrozenSet[int]]:
    """Insiemi di stati delle SCC parent in ordine canonico"""
    return [frozenset(decomposition.components[index]) for index in decomposition.parent_indices]


def child_sccs(decomposition: SccDecomposition) -> List[FrozenSet[int]]:
    """Insiemi di stati delle SCC child in ordine canonico"""
    return [frozenset(decomposition.components[index]) for index in decomposition.child_indices]
