#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Definizione dei report prodotti dalla pipeline di obsel

Questo modulo definisce la struttura dei report che attraversano le fasi della
pipeline (analisi strutturale, riduzione dei costi, assegnamento, verifica) e
che la CLI stampa come tabella o come JSON. Il contenuto di un report dipende
solo dall'istanza e dalla versione del risolutore, tempi esclusi.
"""

from typing import Any, Dict, List, Optional, TypedDict, Union

Number = Union[int, float]


class SccEntry(TypedDict):
    """Riga della tabella delle SCC"""
    index: int
    members: List[int]
    labels: List[str]
    parent: bool
    level: int


class ReducedMatrixEntry(TypedDict):
    """Matrice ridotta sensori × SCC parent con provenienza"""
    columns: List[Optional[List[int]]]  # stati della SCC parent, None per le colonne fittizie
    values: List[List[Number]]
    argmin_state: List[List[Optional[int]]]
    pseudo: List[List[bool]]
    pseudo_cost: Number


class AssignmentEntry(TypedDict):
    """Assegnamento di un sensore (numerazione 1-based)"""
    sensor: int
    parent_scc: Optional[int]
    state: Optional[int]
    cost: Optional[Number]


class SolutionReport(TypedDict):
    """Report completo di analisi e soluzione di un'istanza"""
    solver_version: str
    instance_digest: str
    n: int
    m: int
    edges: int

    # Analisi strutturale
    structurally_cyclic: Optional[bool]
    cyclicity_check: Optional[str]
    structural_rank: Optional[int]
    sccs: List[SccEntry]
    parent_count: Optional[int]

    # Assegnamento
    reduced: Optional[ReducedMatrixEntry]
    assignment: List[AssignmentEntry]
    total_cost: Optional[Number]
    feasible: Optional[bool]
    verdict: str
    uncoverable_parents: List[List[int]]
    row_duals: List[Number]
    col_duals: List[Number]

    # Tempi per fase (secondi)
    timings: Dict[str, float]


class VerificationReport(TypedDict):
    """Confronto tra risolutore e oracolo a forza bruta"""
    instance_digest: str
    seed: Optional[int]
    n: int
    m: int
    solver_cost: Optional[Number]
    solver_feasible: Optional[bool]
    oracle_cost: Optional[Number]
    observable_count: int
    non_observable_count: int
    tolerance: float
    match: bool
    detail: str
    timings: Dict[str, float]


def initialize_report(digest: str, n: int, m: int, edges: int) -> SolutionReport:
    """Inizializza il report di un'istanza con valori predefiniti"""
    from config import Config

    report: SolutionReport = {
        "solver_version": f"{Config.APP_NAME} {Config.VERSION}",
        "instance_digest": digest,
        "n": n,
        "m": m,
        "edges": edges,
        "structurally_cyclic": None,
        "cyclicity_check": None,
        "structural_rank": None,
        "sccs": [],
        "parent_count": None,
        "reduced": None,
        "assignment": [],
        "total_cost": None,
        "feasible": None,
        "verdict": "",
        "uncoverable_parents": [],
        "row_duals": [],
        "col_duals": [],
        "timings": {},
    }

    return report


def strip_timings(report: Dict[str, Any]) -> Dict[str, Any]:
    """Copia del report senza i tempi, per i confronti tra esecuzioni"""
    return {key: value for key, value in report.items() if key != "timings"}
