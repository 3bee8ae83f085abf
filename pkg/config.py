#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Configurazione del sistema obsel

Questo modulo contiene tutte le configurazioni e costanti utilizzate dal sistema,
includendo tolleranze numeriche, limiti dell'oracolo, parametri del generatore
di istanze e la tassonomia dei codici di uscita della CLI.
"""

import os
from dotenv import load_dotenv

# Carica le variabili d'ambiente dal file .env
load_dotenv()


def _env_int(name: str, default: int) -> int:
    value = os.getenv(name)
    if value is None or value.strip() == "":
        return default
    return int(value)


def _env_float(name: str, default: float) -> float:
    value = os.getenv(name)
    if value is None or value.strip() == "":
        return default
    return float(value)


class Config:
    """Classe di configurazione per obsel"""

    # Configurazioni generali
    APP_NAME = "obsel"
    VERSION = "1.0.0"
    LOG_LEVEL = os.getenv("OBSEL_LOG_LEVEL", "WARNING").upper()

    # Configurazioni numeriche
    TOLERANCE = _env_float("OBSEL_TOLERANCE", 1e-9)  # Tolleranza additiva sui duali
    PSEUDO_COST_FLOOR = 1.0  # Pseudo-costo minimo quando tutti i costi sono nulli
    INTEGER_EXACT_LIMIT = 2 ** 53  # Oltre questa somma i costi interi passano in virgola mobile

    # Configurazioni per l'oracolo a forza bruta
    ORACLE_MAX_SENSORS = _env_int("OBSEL_ORACLE_CAP_M", 8)
    ORACLE_MAX_STATES = _env_int("OBSEL_ORACLE_CAP_N", 16)
    ORACLE_MAX_SELECTIONS = 2_000_000  # Numero massimo di selezioni enumerate

    # Configurazioni per il generatore di istanze
    DEFAULT_SEED = _env_int("OBSEL_SEED", 0)
    DEFAULT_COST_RANGE = (0.0, 10.0)
    DEFAULT_NONREALIZABLE_PROB = 0.5
    REALIZATION_RANGE = (0.5, 1.5)  # Valori dei nonzeri per il rango numerico
    EXAMPLE1_STATES = 15
    EXAMPLE1_PARENTS = 4

    # Esecuzione batch della verifica
    BATCH_WORKERS = _env_int("OBSEL_BATCH_WORKERS", 4)

    # Percorsi
    DEFAULT_FIXTURES_PATH = os.path.join(os.path.dirname(os.path.abspath(__file__)), "example_data.json")

    # Codici di uscita della CLI
    EXIT_OK = 0
    EXIT_INPUT_ERROR = 2
    EXIT_NOT_CYCLIC = 3
    EXIT_INFEASIBLE = 4
    EXIT_INSUFFICIENT_SENSORS = 5
    EXIT_ORACLE_MISMATCH = 6

    EXIT_CODES = {
        EXIT_OK: "success (structurally cyclic / feasible / oracle match)",
        EXIT_INPUT_ERROR: "invalid input, parse error or instance over the oracle bound",
        EXIT_NOT_CYCLIC: "system is not structurally cyclic",
        EXIT_INFEASIBLE: "no feasible sensor selection (uncoverable parent SCCs)",
        EXIT_INSUFFICIENT_SENSORS: "fewer sensors than parent SCCs",
        EXIT_ORACLE_MISMATCH: "solver and oracle disagree",
    }

# Costanti globali
TOLERANCE = Config.TOLERANCE
ORACLE_MAX_SENSORS = Config.ORACLE_MAX_SENSORS
ORACLE_MAX_STATES = Config.ORACLE_MAX_STATES
DEFAULT_SEED = Config.DEFAULT_SEED
