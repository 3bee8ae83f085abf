#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Caricamento delle istanze di esempio incluse nel repository.
"""

import json
import logging
from typing import Any, Dict, List, Optional, Tuple

from config import Config
from digraph import CostMatrix, StructuredSystem, load_system

logger = logging.getLogger(__name__)


def load_example_data(path: str = Config.DEFAULT_FIXTURES_PATH) -> List[Dict[str, Any]]:
    """
    Carica gli esempi dal file JSON.

    Args:
        path: Percorso del file degli esempi

    Returns:
        List[Dict[str, Any]]: Lista di esempi con id, nome, descrizione e istanza
    """
    with open(path, "r", encoding="utf-8") as f:
        data = json.load(f)
    return data.get("examples", [])


def get_example_names(path: str = Config.DEFAULT_FIXTURES_PATH) -> List[Dict[str, str]]:
    return [{"id": example["id"], "name": example["name"]} for example in load_example_data(path)]


def get_example_document(example_id: str, path: str = Config.DEFAULT_FIXTURES_PATH) -> Optional[Dict[str, Any]]:
    """Documento JSON dell'istanza con l'id dato, None se non esiste"""
    for example in load_example_data(path):
        if example["id"] == example_id:
            return example["instance"]
    logger.warning(f"Esempio {example_id!r} non trovato in {path}")
    return None


def get_example_text(example_id: str, path: str = Config.DEFAULT_FIXTURES_PATH) -> str:
    """Testo JSON dell'istanza, pronto per il parser o per un file temporaneo"""
    document = get_example_document(example_id, path)
    if document is None:
        raise KeyError(example_id)
    return json.dumps(document, indent=2)


def load_example(example_id: str, path: str = Config.DEFAULT_FIXTURES_PATH) -> Tuple[StructuredSystem, CostMatrix]:
    """
    Carica e valida un'istanza di esempio.

    Raises:
        KeyError: Se l'id non esiste
        InstanceError: Se l'istanza non è valida
    """
    return load_system(get_example_text(example_id, path))
