#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Verifica dell'osservabilità strutturale di una struttura di misura.

Per sistemi strutturalmente ciclici il sistema è osservabile se e solo se ogni
SCC parent contiene almeno uno stato misurato: gli stati delle SCC child
raggiungono un parent con un cammino diretto e quindi un sensore.
I sistemi non ciclici ricevono un esito distinto e non vengono analizzati oltre.
"""

from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, Optional

from digraph.schema import MeasurementStructure, StructuredSystem
from .matching import is_structurally_cyclic, structural_rank
from .scc import SccDecomposition, parent_sccs, scc_decompose


class StructuralAnalysisError(Exception):
    """Eccezione base per gli errori dell'analisi strutturale"""
    pass


class MeasurementIndexError(StructuralAnalysisError):
    """Eccezione per strutture di misura incompatibili con il sistema"""
    pass


class FailureKind(Enum):
    """Motivo del fallimento della verifica di osservabilità"""
    NOT_CYCLIC = "not_structurally_cyclic"
    UNCOVERED_PARENT = "uncovered_parent_scc"


@dataclass(frozen=True)
class ObservabilityVerdict:
    """Esito della verifica: osservabile oppure motivo del fallimento"""
    observable: bool
    failure: Optional[FailureKind] = None
    uncovered_parent: Optional[FrozenSet[int]] = None
    message: str = "observable"


def check_structural_observability(
    system: StructuredSystem,
    measurement: MeasurementStructure,
    decomposition: Optional[SccDecomposition] = None,
) -> ObservabilityVerdict:
    """
    Verifica l'osservabilità strutturale di una struttura di misura.

    Args:
        system: Sistema strutturato
        measurement: Stati misurati dai sensori
        decomposition: Decomposizione in SCC già calcolata (opzionale)

    Returns:
        ObservabilityVerdict: Osservabile, oppure il motivo del fallimento
            (sistema non ciclico o prima SCC parent scoperta)

    Raises:
        MeasurementIndexError: Se le dimensioni non coincidono o uno stato è fuori intervallo
    """
    if measurement.n != system.n:
        raise MeasurementIndexError(f"measurement has n={measurement.n}, system has n={system.n}")
    for sensor, state in enumerate(measurement.picks, start=1):
        if state is not None and not 1 <= state <= system.n:
            raise MeasurementIndexError(f"sensor {sensor} measures state {state}, out of range [1, {system.n}]")

    if not is_structurally_cyclic(system):
        rank = structural_rank(system).size
        return ObservabilityVerdict(
            observable=False,
            failure=FailureKind.NOT_CYCLIC,
            message=f"not structurally cyclic: structural rank {rank} < n={system.n}",
        )

    if decomposition is None:
        decomposition = scc_decompose(system)
    measured = measurement.measured_states
    for parent in parent_sccs(decomposition):
        if not parent & measured:
            members = ",".join(f"x{node}" for node in sorted(parent))
            return ObservabilityVerdict(
                observable=False,
                failure=FailureKind.UNCOVERED_PARENT,
                uncovered_parent=parent,
                message=f"parent SCC {{{members}}} has no measured state",
            )
    return ObservabilityVerdict(observable=True)
