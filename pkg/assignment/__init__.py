#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Pacchetto per l'assegnamento ottimo dei sensori

Questo pacchetto contiene la riduzione dei costi alle SCC parent, il metodo
ungherese con certificati duali e l'esito di fattibilità dell'assegnamento.
"""

from .cost_model import (
    AssignmentError,
    AssignmentInputError,
    InsufficientSensorsError,
    ReducedCostMatrix,
    pseudo_cost_for,
    reduce_costs
)
from .feasibility import (
    InfeasibleAssignmentError,
    HallViolation,
    FeasibilityVerdict,
    feasibility_verdict,
    assemble_measurement
)
from .hungarian import (
    AssignmentSolution,
    solve_assignment,
    solve_lsap
)
