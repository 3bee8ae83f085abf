#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Pacchetto per la verifica del risolutore

Questo pacchetto contiene l'oracolo a forza bruta, il generatore di istanze
casuali riproducibili e le realizzazioni numeriche per il controllo del rango.
"""

from .enumeration import (
    OracleError,
    OracleSizeError,
    EnumerationReport,
    enumerate_all,
    enumerate_bijections
)
from .generator import (
    GeneratorConfigError,
    Topology,
    GeneratorConfig,
    EXAMPLE1_EDGES,
    generate
)
from .realization import (
    random_realization,
    numeric_rank
)
