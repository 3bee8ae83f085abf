#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Realizzazioni numeriche casuali della matrice strutturata.

Il rango strutturale è il massimo rango su tutte le realizzazioni numeriche dei
non-zeri: una singola realizzazione casuale non può superarlo e lo raggiunge
con probabilità uno.
"""

from typing import Optional, Tuple

import numpy as np

from config import Config
from digraph.schema import StructuredSystem


def random_realization(system: StructuredSystem, rng: np.random.Generator,
                       value_range: Tuple[float, float] = Config.REALIZATION_RANGE) -> np.ndarray:
    """Matrice densa con i non-zeri strutturali estratti uniformemente in value_range"""
    pattern = system.dense_structure().astype(bool)
    values = rng.uniform(value_range[0], value_range[1], size=pattern.shape)
    return np.where(pattern, values, 0.0)


def numeric_rank(system: StructuredSystem, rng: Optional[np.random.Generator] = None,
                 value_range: Tuple[float, float] = Config.REALIZATION_RANGE) -> int:
    """
    Rango numerico di una realizzazione casuale.

    Args:
        system: Sistema strutturato
        rng: Generatore casuale (nuovo generatore con seme di default se None)
        value_range: Intervallo dei valori dei non-zeri

    Returns:
        int: Rango numerico della realizzazione
    """
    if rng is None:
        rng = np.random.default_rng(Config.DEFAULT_SEED)
    return int(np.linalg.matrix_rank(random_realization(system, rng, value_range)))
