#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Generatore di istanze casuali riproducibili.

Le strutture sono ciclicamente strutturate per costruzione: ogni blocco di stati
è un anello (un self-loop per i blocchi di un solo stato), quindi ogni nodo sta
su un ciclo e i blocchi diventano le SCC. Gli archi tra blocchi vanno solo dai
blocchi child verso blocchi successivi, per cui gli ultimi p blocchi sono i
pozzi della condensazione, cioè le SCC parent.

I numeri casuali vengono da PCG64 con flussi indipendenti derivati da
SeedSequence: un flusso per la struttura e uno per ogni riga dei costi, così
che la ripetizione di una riga senza stati realizzabili non perturbi le altre.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Set, Tuple, Union

import numpy as np

from config import Config
from digraph.schema import CostMatrix, StructuredSystem
from .enumeration import OracleError

logger = logging.getLogger(__name__)

Number = Union[int, float]

# Struttura dell'esempio a 15 stati: parent {1,2,3}, {9,10}, {11,12,13}, {14,15};
# child {4,5,6} e {7,8}. Ogni stato ha un self-loop.
EXAMPLE1_EDGES: Tuple[Tuple[int, int], ...] = tuple(
    [(k, k) for k in range(1, 16)]
    + [
        (1, 2), (2, 3), (3, 1),
        (4, 5), (5, 6), (6, 4), (4, 1), (6, 9), (5, 14),
        (7, 8), (8, 7), (7, 5), (8, 11),
        (9, 10), (10, 9),
        (11, 12), (12, 13), (13, 11),
        (14, 15), (15, 14),
    ]
)

CHILD_TO_PARENT_PROB = 0.3


class GeneratorConfigError(OracleError):
    """Eccezione per configurazioni del generatore contraddittorie"""
    pass


class Topology(Enum):
    EXAMPLE1 = "example1"
    PARENT_CHAIN = "parent-chain"
    RANDOM_CYCLIC = "random-cyclic"


@dataclass(frozen=True)
class GeneratorConfig:
    """Parametri del generatore.

    `parents` fissa il numero di SCC parent (in alternativa lo si ricava da m);
    `scc_count` è il numero totale di SCC per la topologia random-cyclic.
    """
    n: Optional[int] = None
    m: Optional[int] = None
    seed: int = Config.DEFAULT_SEED
    cost_range: Tuple[Number, Number] = Config.DEFAULT_COST_RANGE
    nonrealizable_prob: float = Config.DEFAULT_NONREALIZABLE_PROB
    topology: Topology = Topology.PARENT_CHAIN
    parents: Optional[int] = None
    scc_count: Optional[int] = None
    integer_costs: bool = False
    self_loop_prob: float = 0.5

    def parent_count(self) -> int:
        if self.topology is Topology.EXAMPLE1:
            return Config.EXAMPLE1_PARENTS
        return self.parents if self.parents is not None else self.m

    def state_count(self) -> int:
        if self.topology is Topology.EXAMPLE1:
            return Config.EXAMPLE1_STATES
        return self.n

    def validate(self) -> None:
        """
        Verifica la coerenza della configurazione.

        Raises:
            GeneratorConfigError: Se i parametri sono contraddittori o fuori intervallo
        """
        if isinstance(self.seed, bool) or not isinstance(self.seed, (int, np.integer)) or not 0 <= self.seed < 2 ** 64:
            raise GeneratorConfigError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")
        if not 0.0 <= self.nonrealizable_prob < 1.0:
            raise GeneratorConfigError(f"nonrealizable_prob must lie in [0, 1), got {self.nonrealizable_prob}")
        if not 0.0 <= self.self_loop_prob <= 1.0:
            raise GeneratorConfigError(f"self_loop_prob must lie in [0, 1], got {self.self_loop_prob}")

        low, high = self.cost_range
        if not (math.isfinite(low) and math.isfinite(high)) or low < 0 or low > high:
            raise GeneratorConfigError(f"cost_range must satisfy 0 <= low <= high, got ({low}, {high})")
        if self.integer_costs and not (float(low).is_integer() and float(high).is_integer()):
            raise GeneratorConfigError(f"integer costs need integral bounds, got ({low}, {high})")

        if self.topology is Topology.EXAMPLE1:
            if self.n not in (None, Config.EXAMPLE1_STATES):
                raise GeneratorConfigError(f"topology example1 has {Config.EXAMPLE1_STATES} states, got n={self.n}")
            if self.parents not in (None, Config.EXAMPLE1_PARENTS):
                raise GeneratorConfigError(
                    f"topology example1 has {Config.EXAMPLE1_PARENTS} parent SCCs, got parents={self.parents}"
                )
        else:
            if self.parent_count() is None:
                raise GeneratorConfigError(f"topology {self.topology.value} needs the parent count (parents or m)")
            if self.n is None:
                raise GeneratorConfigError(f"topology {self.topology.value} needs the number of states n")
            if self.parent_count() < 1:
                raise GeneratorConfigError(f"parent count must be positive, got {self.parent_count()}")
            if self.n < self.parent_count():
                raise GeneratorConfigError(f"n={self.n} is smaller than the parent count {self.parent_count()}")
        if self.topology is Topology.RANDOM_CYCLIC:
            if self.scc_count is None:
                raise GeneratorConfigError("topology random-cyclic needs scc_count")
            if not self.parent_count() <= self.scc_count <= self.n:
                raise GeneratorConfigError(
                    f"scc_count={self.scc_count} must lie between the parent count {self.parent_count()} and n={self.n}"
                )

        if self.m is not None and self.m != self.parent_count():
            raise GeneratorConfigError(
                f"topology {self.topology.value} produces {self.parent_count()} parent SCCs but m={self.m}"
            )


def _partition(rng: np.random.Generator, n: int, blocks: int) -> List[np.ndarray]:
    """Divide gli stati 1..n, mescolati, in blocchi non vuoti"""
    nodes = rng.permutation(n) + 1
    if blocks == 1:
        return [nodes]
    cuts = np.sort(rng.choice(np.arange(1, n), size=blocks - 1, replace=False))
    return np.split(nodes, cuts)


def _block_edges(rng: np.random.Generator, block: np.ndarray, self_loop_prob: float) -> Set[Tuple[int, int]]:
    """Anello sul blocco più self-loop e corde interne casuali"""
    size = len(block)
    edges = {(int(block[k]), int(block[(k + 1) % size])) for k in range(size)}
    for node in block:
        if rng.random() < self_loop_prob:
            edges.add((int(node), int(node)))
    if size >= 3:
        for _ in range(size // 2):
            source, target = rng.choice(block, size=2, replace=False)
            edges.add((int(source), int(target)))
    return edges


def _link(rng: np.random.Generator, source: np.ndarray, target: np.ndarray) -> Tuple[int, int]:
    return int(rng.choice(source)), int(rng.choice(target))


def _parent_chain(rng: np.random.Generator, config: GeneratorConfig) -> Set[Tuple[int, int]]:
    n, p = config.n, config.parent_count()
    children_count = int(rng.integers(0, min(n - p, 2 * p) + 1))
    blocks = _partition(rng, n, p + children_count)
    children, parents = blocks[:children_count], blocks[children_count:]

    edges: Set[Tuple[int, int]] = set()
    for block in blocks:
        edges |= _block_edges(rng, block, config.self_loop_prob)

    # Ogni child appartiene a una catena che termina su una SCC parent
    chain_of = rng.integers(0, p, size=children_count)
    for chain in range(p):
        members = [children[index] for index in np.flatnonzero(chain_of == chain)]
        path = members + [parents[chain]]
        for source, target in zip(path, path[1:]):
            edges.add(_link(rng, source, target))
    for block in children:
        if rng.random() < CHILD_TO_PARENT_PROB:
            edges.add(_link(rng, block, parents[int(rng.integers(0, p))]))
    return edges


def _random_cyclic(rng: np.random.Generator, config: GeneratorConfig) -> Set[Tuple[int, int]]:
    count, p = config.scc_count, config.parent_count()
    blocks = _partition(rng, config.n, count)
    child_count = count - p

    edges: Set[Tuple[int, int]] = set()
    for block in blocks:
        edges |= _block_edges(rng, block, config.self_loop_prob)
    # Archi solo verso blocchi di indice maggiore: la condensazione resta aciclica
    for index in range(child_count):
        target = int(rng.integers(index + 1, count))
        edges.add(_link(rng, blocks[index], blocks[target]))
    for _ in range(child_count):
        source = int(rng.integers(0, child_count))
        target = int(rng.integers(source + 1, count))
        edges.add(_link(rng, blocks[source], blocks[target]))
    return edges


def _cost_row(rng: np.random.Generator, n: int, config: GeneratorConfig, sensor: int) -> Tuple[np.ndarray, np.ndarray]:
    low, high = config.cost_range
    if config.integer_costs:
        values = rng.integers(int(low), int(high), endpoint=True, size=n, dtype=np.int64)
    else:
        values = rng.uniform(low, high, size=n)
    mask = rng.random(n) < config.nonrealizable_prob
    while mask.all():
        logger.debug(f"Sensore {sensor + 1}: nessuno stato realizzabile, nuova estrazione della riga")
        mask = rng.random(n) < config.nonrealizable_prob
    return values, mask


def generate(config: GeneratorConfig) -> Tuple[StructuredSystem, CostMatrix]:
    """
    Genera un'istanza riproducibile.

    Args:
        config: Configurazione del generatore

    Returns:
        Tuple: Sistema strutturato ciclico e matrice dei costi con m = numero di SCC parent

    Raises:
        GeneratorConfigError: Se la configurazione è contraddittoria
    """
    config.validate()
    n, m = config.state_count(), config.parent_count()
    streams = np.random.SeedSequence(int(config.seed)).spawn(1 + m)
    structure_rng = np.random.Generator(np.random.PCG64(streams[0]))

    if config.topology is Topology.EXAMPLE1:
        edges = set(EXAMPLE1_EDGES)
    elif config.topology is Topology.PARENT_CHAIN:
        edges = _parent_chain(structure_rng, config)
    else:
        edges = _random_cyclic(structure_rng, config)
    system = StructuredSystem.from_edges(n, sorted(edges))

    values = []
    masks = []
    for sensor in range(m):
        row_rng = np.random.Generator(np.random.PCG64(streams[1 + sensor]))
        row, mask = _cost_row(row_rng, n, config, sensor)
        values.append(row)
        masks.append(mask)
    costs = CostMatrix(np.ma.MaskedArray(np.vstack(values), mask=np.vstack(masks)))

    logger.info(
        f"Istanza generata: topologia {config.topology.value}, n={n}, m={m}, "
        f"{len(system.edges)} archi, seme {config.seed}"
    )
    return system, costs
