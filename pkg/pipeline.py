#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Pipeline di analisi, soluzione e verifica per obsel

Questo modulo definisce le fasi che trasformano un'istanza in un report: ogni
fase riceve il contesto, restituisce gli aggiornamenti del report e viene
cronometrata. La sequenza delle fasi è fissa; la fase di riduzione interrompe la
pipeline sui sistemi non strutturalmente ciclici.
"""

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from assignment import (
    AssignmentSolution,
    ReducedCostMatrix,
    feasibility_verdict,
    reduce_costs,
    solve_lsap
)
from config import Config
from digraph import CostMatrix, MeasurementStructure, StructuredSystem, instance_digest
from oracle import EnumerationReport, GeneratorConfig, enumerate_all, generate
from state import SolutionReport, VerificationReport, initialize_report
from structural import (
    SccDecomposition,
    check_structural_observability,
    is_self_damped,
    parent_sccs,
    scc_decompose,
    structural_rank
)

logger = logging.getLogger(__name__)

Solver = Callable[[ReducedCostMatrix, float], AssignmentSolution]


@dataclass
class PipelineContext:
    """Oggetti di dominio condivisi tra le fasi, accanto al report serializzabile"""
    system: StructuredSystem
    costs: CostMatrix
    report: SolutionReport
    tolerance: float = Config.TOLERANCE
    solver: Solver = solve_lsap
    decomposition: Optional[SccDecomposition] = None
    reduced: Optional[ReducedCostMatrix] = None
    solution: Optional[AssignmentSolution] = None
    halted: bool = False


# Funzioni delle fasi a livello di modulo

def matching_stage(context: PipelineContext) -> Dict[str, Any]:
    system = context.system
    rank = structural_rank(system).size
    if is_self_damped(system):
        return {"structurally_cyclic": True, "cyclicity_check": "self-damped", "structural_rank": rank}
    cyclic = rank == system.n
    update = {"structurally_cyclic": cyclic, "cyclicity_check": "matching", "structural_rank": rank}
    if not cyclic:
        update["verdict"] = f"not structurally cyclic: structural rank {rank} < n={system.n}"
    return update


def scc_stage(context: PipelineContext) -> Dict[str, Any]:
    decomposition = scc_decompose(context.system)
    context.decomposition = decomposition
    level_of = {}
    for level, generation in enumerate(decomposition.levels()):
        for index in generation:
            level_of[index] = level
    labels = context.system.labels
    sccs = [
        {
            "index": index + 1,
            "members": list(members),
            "labels": [labels[node - 1] for node in members],
            "parent": decomposition.parent_flags[index],
            "level": level_of[index],
        }
        for index, members in enumerate(decomposition.components)
    ]
    return {"sccs": sccs, "parent_count": len(decomposition.parent_indices)}


def reduction_stage(context: PipelineContext) -> Dict[str, Any]:
    if not context.report["structurally_cyclic"]:
        context.halted = True
        return {}
    # InsufficientSensorsError risale fino alla CLI
    reduced = reduce_costs(context.costs, parent_sccs(context.decomposition))
    context.reduced = reduced
    columns = [sorted(parent) for parent in reduced.parents] + [None] * (reduced.m - reduced.p)
    return {
        "reduced": {
            "columns": columns,
            "values": reduced.values.tolist(),
            "argmin_state": [list(row) for row in reduced.argmin_state],
            "pseudo": reduced.is_pseudo.tolist(),
            "pseudo_cost": reduced.pseudo_cost,
        }
    }


def lsap_stage(context: PipelineContext) -> Dict[str, Any]:
    solution = context.solver(context.reduced, context.tolerance)
    context.solution = solution
    reduced = context.reduced
    assignment = []
    for sensor, column in enumerate(solution.permutation):
        dummy = column >= reduced.p
        pseudo = bool(reduced.is_pseudo[sensor, column])
        assignment.append({
            "sensor": sensor + 1,
            "parent_scc": None if dummy else column + 1,
            "state": None if dummy or pseudo else reduced.argmin_state[sensor][column],
            "cost": None if dummy or pseudo else reduced.entry(sensor, column),
        })
    return {
        "assignment": assignment,
        "total_cost": solution.total_cost,
        "row_duals": list(solution.row_duals),
        "col_duals": list(solution.col_duals),
    }


def feasibility_stage(context: PipelineContext) -> Dict[str, Any]:
    verdict = feasibility_verdict(context.solution, context.reduced)
    return {
        "feasible": verdict.feasible,
        "verdict": verdict.message,
        "uncoverable_parents": [sorted(parent) for parent in verdict.uncoverable_parents],
    }


Stage = Tuple[str, Callable[[PipelineContext], Dict[str, Any]]]

ANALYSIS_STAGES: List[Stage] = [
    ("matching", matching_stage),
    ("scc", scc_stage),
]

SOLVE_STAGES: List[Stage] = ANALYSIS_STAGES + [
    ("reduction", reduction_stage),
    ("lsap", lsap_stage),
    ("feasibility", feasibility_stage),
]


def run_stages(context: PipelineContext, stages: Sequence[Stage]) -> SolutionReport:
    """Esegue le fasi in sequenza registrando i tempi nel report"""
    for name, stage in stages:
        started = time.perf_counter()
        update = stage(context)
        elapsed = time.perf_counter() - started
        context.report.update(update)
        context.report["timings"][name] = elapsed
        logger.info(f"Fase {name} completata in {elapsed:.6f} s")
        if context.halted:
            logger.info(f"Pipeline interrotta dopo la fase {name}")
            break
    return context.report


def _new_context(system: StructuredSystem, costs: CostMatrix, tolerance: float, solver: Solver) -> PipelineContext:
    report = initialize_report(instance_digest(system, costs), system.n, costs.m, len(system.edges))
    return PipelineContext(system=system, costs=costs, report=report, tolerance=tolerance, solver=solver)


def analyze_instance(system: StructuredSystem, costs: CostMatrix) -> SolutionReport:
    """Report con le sole sezioni strutturali (ciclicità, rango, SCC)"""
    context = _new_context(system, costs, Config.TOLERANCE, solve_lsap)
    report = run_stages(context, ANALYSIS_STAGES)
    if report["structurally_cyclic"]:
        report["verdict"] = "structurally cyclic"
    return report


def solve_instance(system: StructuredSystem, costs: CostMatrix, tolerance: float = Config.TOLERANCE,
                   solver: Solver = solve_lsap) -> SolutionReport:
    """
    Esegue l'intera pipeline di soluzione.

    Args:
        system: Sistema strutturato
        costs: Matrice dei costi sensore-stato
        tolerance: Tolleranza additiva sui duali
        solver: Risolutore LSAP (sostituibile nei test)

    Returns:
        SolutionReport: Report completo

    Raises:
        InsufficientSensorsError: Se i sensori sono meno delle SCC parent
    """
    return run_stages(_new_context(system, costs, tolerance, solver), SOLVE_STAGES)


def exit_code_for(report: SolutionReport) -> int:
    """Codice di uscita della CLI per un report di analisi o di soluzione"""
    if not report["structurally_cyclic"]:
        return Config.EXIT_NOT_CYCLIC
    if report["feasible"] is False:
        return Config.EXIT_INFEASIBLE
    return Config.EXIT_OK


def _costs_match(solver_cost, oracle_cost, tolerance: float) -> bool:
    if isinstance(solver_cost, int) and isinstance(oracle_cost, int):
        return solver_cost == oracle_cost
    return abs(solver_cost - oracle_cost) <= tolerance


def verify_instance(
    system: StructuredSystem,
    costs: CostMatrix,
    tolerance: float = Config.TOLERANCE,
    oracle_cap: int = Config.ORACLE_MAX_SENSORS,
    solver: Solver = solve_lsap,
    seed: Optional[int] = None,
) -> Tuple[VerificationReport, EnumerationReport]:
    """
    Confronta il risolutore con l'oracolo a forza bruta.

    Il confronto è superato quando il costo ottimo coincide con il minimo
    osservabile dell'oracolo (esatto per costi interi) e la misura prodotta
    copre tutte le SCC parent al costo dichiarato; per le istanze non fattibili
    l'oracolo non deve trovare alcuna selezione osservabile.

    Args:
        system: Sistema strutturato (ciclico)
        costs: Matrice dei costi
        tolerance: Tolleranza sul confronto dei costi reali
        oracle_cap: Numero massimo di sensori per l'enumerazione
        solver: Risolutore LSAP (sostituibile nei test)
        seed: Seme dell'istanza generata, se noto

    Returns:
        Tuple: report di verifica e report dell'oracolo

    Raises:
        OracleSizeError: Se l'istanza supera i limiti dell'enumerazione
        InsufficientSensorsError: Se i sensori sono meno delle SCC parent
    """
    timings: Dict[str, float] = {}
    started = time.perf_counter()
    enumeration = enumerate_all(system, costs, max_sensors=oracle_cap)
    timings["oracle"] = time.perf_counter() - started

    solution = solve_instance(system, costs, tolerance, solver)
    timings.update(solution["timings"])

    oracle_cost = enumeration.min_observable_cost
    if not solution["structurally_cyclic"]:
        match, detail = False, solution["verdict"]
    elif not solution["feasible"]:
        match = oracle_cost is None
        detail = "both infeasible" if match else f"solver reports infeasible, oracle optimum {oracle_cost}"
    elif oracle_cost is None:
        match, detail = False, "solver reports a feasible selection, oracle finds none"
    else:
        measurement = measurement_from_report(solution)
        verdict = check_structural_observability(system, measurement)
        realized = measurement.cost_under(costs)
        if not verdict.observable:
            match, detail = False, f"solver selection is not observable: {verdict.message}"
        elif not _costs_match(realized, solution["total_cost"], tolerance):
            match, detail = False, f"solver selection costs {realized}, reported {solution['total_cost']}"
        elif not _costs_match(solution["total_cost"], oracle_cost, tolerance):
            match, detail = False, f"solver optimum {solution['total_cost']} differs from oracle optimum {oracle_cost}"
        else:
            match, detail = True, "match"

    report: VerificationReport = {
        "instance_digest": solution["instance_digest"],
        "seed": seed,
        "n": system.n,
        "m": costs.m,
        "solver_cost": solution["total_cost"],
        "solver_feasible": solution["feasible"],
        "oracle_cost": oracle_cost,
        "observable_count": enumeration.observable_count,
        "non_observable_count": enumeration.non_observable_count,
        "tolerance": tolerance,
        "match": match,
        "detail": detail,
        "timings": timings,
    }
    if not match:
        logger.warning(f"Verifica fallita per {report['instance_digest'][:12]}: {detail}")
    return report, enumeration


def measurement_from_report(report: SolutionReport) -> MeasurementStructure:
    """Struttura di misura ricostruita dalla sezione di assegnamento del report"""
    return MeasurementStructure(n=report["n"], picks=tuple(entry["state"] for entry in report["assignment"]))


def _verify_seed(arguments: Tuple[GeneratorConfig, float, int]) -> VerificationReport:
    config, tolerance, oracle_cap = arguments
    system, costs = generate(config)
    report, _ = verify_instance(system, costs, tolerance, oracle_cap, seed=config.seed)
    return report


def verify_batch(
    config: GeneratorConfig,
    count: int,
    tolerance: float = Config.TOLERANCE,
    oracle_cap: int = Config.ORACLE_MAX_SENSORS,
    workers: int = Config.BATCH_WORKERS,
) -> List[VerificationReport]:
    """
    Verifica `count` istanze generate con semi consecutivi a partire da config.seed.

    Le istanze sono indipendenti e vengono verificate in un pool di processi;
    i report tornano nell'ordine dei semi.
    """
    jobs = [(replace(config, seed=(config.seed + offset) % 2 ** 64), tolerance, oracle_cap) for offset in range(count)]
    if workers <= 1 or count <= 1:
        return [_verify_seed(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(_verify_seed, jobs))
