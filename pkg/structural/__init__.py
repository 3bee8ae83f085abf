#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Pacchetto per l'analisi strutturale del sistema

Questo pacchetto contiene il calcolo del rango strutturale tramite matching,
la decomposizione in SCC con la classificazione parent/child e la verifica
dell'osservabilità strutturale di una struttura di misura.
"""

from .matching import (
    MatchingResult,
    structural_rank,
    is_self_damped,
    is_structurally_cyclic
)
from .scc import (
    SccDecomposition,
    scc_decompose,
    parent_sccs,
    child_sccs
)
from .observability import (
    StructuralAnalysisError,
    MeasurementIndexError,
    FailureKind,
    ObservabilityVerdict,
    check_structural_observability
)
