#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Pacchetto per la rappresentazione delle istanze

Questo pacchetto contiene i tipi del sistema strutturato, della matrice dei costi
e della struttura di misura, con il parser e il serializzatore del formato JSON.
"""

from .schema import (
    StructuredSystem,
    CostMatrix,
    MeasurementStructure,
    InstanceError,
    InstanceValidationError,
    out_neighbors
)
from .parser import (
    InstanceParseError,
    load_system,
    load_system_file,
    serialize_system,
    instance_digest
)
