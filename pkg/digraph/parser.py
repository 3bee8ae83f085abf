#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Parser per le istanze JSON di selezione dei sensori.

Questo modulo fornisce funzioni per il parsing e la validazione delle istanze
nel formato `{"n", "edges", "m", "costs", "labels"?}` e la loro conversione
nei tipi del modulo schema, oltre alla serializzazione canonica e al digest
usato nei report.
"""

import hashlib
import json
import logging
import re
from typing import Any, Dict, Optional, Tuple

from .schema import (
    CostMatrix, InstanceError, InstanceValidationError, StructuredSystem,
    is_finite_number,
)

logger = logging.getLogger(__name__)


class InstanceParseError(InstanceError):
    """Eccezione sollevata quando il testo dell'istanza non è JSON valido"""
    pass


def _line_of(text: str, key: str) -> Optional[int]:
    """Riga (1-based) della prima occorrenza della chiave JSON nel testo"""
    match = re.search(r'"%s"\s*:' % re.escape(key), text)
    if match is None:
        return None
    return text.count("\n", 0, match.start()) + 1


def _require_positive_int(document: Dict[str, Any], key: str, text: str) -> int:
    value = document.get(key)
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise InstanceValidationError(f"'{key}' must be a positive integer, got {value!r}", line=_line_of(text, key))
    return value


def load_system(text: str) -> Tuple[StructuredSystem, CostMatrix]:
    """
    Analizza un'istanza dal testo JSON.

    Args:
        text: Testo dell'istanza serializzata

    Returns:
        Tuple[StructuredSystem, CostMatrix]: Sistema e costi validati

    Raises:
        InstanceParseError: Se il testo non è JSON valido
        InstanceValidationError: Se l'istanza viola i vincoli di formato
    """
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise InstanceParseError(f"malformed instance: {e.msg}", line=e.lineno, column=e.colno) from e

    if not isinstance(document, dict):
        raise InstanceValidationError("instance must be a JSON object", line=1)
    for key in ("n", "edges", "m", "costs"):
        if key not in document:
            raise InstanceValidationError(f"missing required key '{key}'", line=1)
    unknown = set(document) - {"n", "edges", "m", "costs", "labels"}
    if unknown:
        logger.warning(f"Chiavi sconosciute ignorate nell'istanza: {sorted(unknown)}")

    n = _require_positive_int(document, "n", text)
    m = _require_positive_int(document, "m", text)

    # Archi
    raw_edges = document["edges"]
    edges_line = _line_of(text, "edges")
    if not isinstance(raw_edges, list):
        raise InstanceValidationError("'edges' must be a list of [from, to] pairs", line=edges_line)
    edges = set()
    for position, pair in enumerate(raw_edges, start=1):
        if (not isinstance(pair, list) or len(pair) != 2
                or any(isinstance(v, bool) or not isinstance(v, int) for v in pair)):
            raise InstanceValidationError(f"edge #{position} must be a pair of integers, got {pair!r}", line=edges_line)
        source, target = pair
        if not (1 <= source <= n and 1 <= target <= n):
            raise InstanceValidationError(f"edge #{position} ({source}, {target}) out of range [1, {n}]", line=edges_line)
        if (source, target) in edges:
            logger.warning(f"Arco duplicato ({source}, {target}) ignorato")
        edges.add((source, target))

    # Etichette opzionali
    labels = document.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or len(labels) != n or not all(isinstance(label, str) for label in labels):
            raise InstanceValidationError(f"'labels' must be a list of {n} strings", line=_line_of(text, "labels"))

    # Costi
    rows = document["costs"]
    costs_line = _line_of(text, "costs")
    if not isinstance(rows, list) or len(rows) != m:
        found = len(rows) if isinstance(rows, list) else type(rows).__name__
        raise InstanceValidationError(f"dimension mismatch: 'costs' must have m={m} rows, got {found}", line=costs_line)
    for sensor, row in enumerate(rows, start=1):
        if not isinstance(row, list) or len(row) != n:
            found = len(row) if isinstance(row, list) else type(row).__name__
            raise InstanceValidationError(f"dimension mismatch: cost row {sensor} must have n={n} entries, got {found}", line=costs_line)
        for state, value in enumerate(row, start=1):
            if value is not None and not is_finite_number(value):
                raise InstanceValidationError(f"cost ({sensor}, {state}) must be a finite number or null, got {value!r}", line=costs_line)
            if value is not None and value < 0:
                raise InstanceValidationError(f"cost ({sensor}, {state}) must be non-negative, got {value!r}", line=costs_line)
        if all(value is None for value in row):
            raise InstanceValidationError(f"sensor {sensor} has no realizable state", line=costs_line)

    system = StructuredSystem(n=n, edges=frozenset(edges), labels=tuple(labels or ()))
    costs = CostMatrix.from_rows(rows)
    logger.info(f"Istanza caricata: n={n}, archi={len(edges)}, m={m}")
    return system, costs


def load_system_file(path: str) -> Tuple[StructuredSystem, CostMatrix]:
    """Carica un'istanza da file"""
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise InstanceParseError(f"cannot read instance file {path}: {e}") from e
    return load_system(text)


def system_to_document(system: StructuredSystem, costs: CostMatrix) -> Dict[str, Any]:
    """Documento JSON canonico dell'istanza (archi ordinati)"""
    if costs.n != system.n:
        raise InstanceValidationError(f"dimension mismatch: system has n={system.n}, costs have n={costs.n}")
    document: Dict[str, Any] = {
        "n": system.n,
        "edges": [[j, i] for j, i in sorted(system.edges)],
        "m": costs.m,
        "costs": costs.to_rows(),
    }
    if system.labels != tuple(f"x{k}" for k in range(1, system.n + 1)):
        document["labels"] = list(system.labels)
    return document


def serialize_system(system: StructuredSystem, costs: CostMatrix, indent: Optional[int] = None) -> str:
    """
    Serializza l'istanza nel formato JSON.

    Args:
        system: Sistema strutturato
        costs: Matrice dei costi
        indent: Indentazione JSON (None per la forma compatta canonica)

    Returns:
        str: Testo JSON dell'istanza
    """
    return json.dumps(system_to_document(system, costs), indent=indent, ensure_ascii=False)


def instance_digest(system: StructuredSystem, costs: CostMatrix) -> str:
    """Digest SHA-256 della serializzazione canonica"""
    canonical = json.dumps(system_to_document(system, costs), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()
