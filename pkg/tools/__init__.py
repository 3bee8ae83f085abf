#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Pacchetto per gli strumenti di supporto di obsel

Questo pacchetto contiene la resa dei report come tabelle, JSON e CSV.
"""

from .report_generator import (
    render_analysis,
    render_solution,
    render_verification,
    render_batch,
    report_to_json,
    sweep_frame,
    write_sweep_csv,
    write_output
)
