#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Generatore dei report di obsel

Questo modulo trasforma i report della pipeline in tabelle leggibili per il
terminale, in JSON per l'uso automatico e in CSV per la sequenza dei costi
delle selezioni enumerate dall'oracolo.
"""

import json
import os
from typing import Any, Dict, List, Optional, Sequence

import pandas as pd
from tabulate import tabulate

from oracle import EnumerationReport
from state import SolutionReport, VerificationReport

TABLE_FORMAT = "github"


def _format_set(states: Optional[Sequence[int]]) -> str:
    if states is None:
        return "(dummy)"
    return "{" + ",".join(f"x{state}" for state in states) + "}"


def _format_number(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def render_analysis(report: SolutionReport) -> str:
    """Tabella della ciclicità strutturale e delle SCC"""
    lines = [
        f"instance   {report['instance_digest'][:16]}  (n={report['n']}, m={report['m']}, edges={report['edges']})",
        f"cyclic     {report['structurally_cyclic']}  (check: {report['cyclicity_check']})",
        f"s-rank     {report['structural_rank']} / {report['n']}",
        f"SCCs       {len(report['sccs'])} ({report['parent_count']} parent)",
        "",
    ]
    rows = [
        [entry["index"], ", ".join(entry["labels"]), "parent" if entry["parent"] else "child", entry["level"]]
        for entry in report["sccs"]
    ]
    lines.append(tabulate(rows, headers=["SCC", "states", "role", "level"], tablefmt=TABLE_FORMAT))
    if report["verdict"]:
        lines.extend(["", report["verdict"]])
    return "\n".join(lines)


def render_solution(report: SolutionReport) -> str:
    """Tabelle di analisi, matrice ridotta e assegnamento"""
    sections = [render_analysis(report)]
    reduced = report["reduced"]
    if reduced is None:
        return "\n".join(sections)

    headers = ["sensor"] + [_format_set(column) for column in reduced["columns"]]
    rows = []
    for sensor, values in enumerate(reduced["values"]):
        row = [sensor + 1]
        for column, value in enumerate(values):
            if reduced["pseudo"][sensor][column]:
                row.append("n/r")
            elif reduced["columns"][column] is None:
                row.append("0")
            else:
                row.append(f"{_format_number(value)} @x{reduced['argmin_state'][sensor][column]}")
        rows.append(row)
    sections.extend(["", "Reduced costs (n/r = non-realizable)", tabulate(rows, headers=headers, tablefmt=TABLE_FORMAT)])

    if report["assignment"]:
        columns = reduced["columns"]
        rows = [
            [
                entry["sensor"],
                "-" if entry["parent_scc"] is None else _format_set(columns[entry["parent_scc"] - 1]),
                "-" if entry["state"] is None else f"x{entry['state']}",
                _format_number(entry["cost"]),
            ]
            for entry in report["assignment"]
        ]
        sections.extend(["", "Assignment", tabulate(rows, headers=["sensor", "parent SCC", "state", "cost"], tablefmt=TABLE_FORMAT)])
        sections.extend(["", f"total cost {_format_number(report['total_cost'])}", report["verdict"]])
    return "\n".join(sections)


def render_verification(report: VerificationReport) -> str:
    rows = [
        ["instance", report["instance_digest"][:16]],
        ["n, m", f"{report['n']}, {report['m']}"],
        ["solver cost", _format_number(report["solver_cost"])],
        ["oracle cost", _format_number(report["oracle_cost"])],
        ["observable selections", report["observable_count"]],
        ["non-observable selections", report["non_observable_count"]],
        ["result", report["detail"]],
    ]
    return tabulate(rows, tablefmt="plain")


def render_batch(reports: Sequence[VerificationReport]) -> str:
    rows = [
        [report["seed"], report["n"], report["m"], _format_number(report["solver_cost"]),
         _format_number(report["oracle_cost"]), "yes" if report["match"] else "NO"]
        for report in reports
    ]
    matched = sum(1 for report in reports if report["match"])
    table = tabulate(rows, headers=["seed", "n", "m", "solver", "oracle", "match"], tablefmt=TABLE_FORMAT)
    return f"{table}\n\n{matched}/{len(reports)} instances match"


def report_to_json(report: Any) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False)


def sweep_frame(enumeration: EnumerationReport) -> pd.DataFrame:
    """
    Sequenza dei costi di tutte le selezioni enumerate.

    Le selezioni osservabili compaiono per costo crescente, seguite dalle non
    osservabili per costo decrescente.

    Args:
        enumeration: Report dell'oracolo con le selezioni conservate

    Returns:
        pd.DataFrame: Colonne selection, cost, observable, states
    """
    records: List[Dict[str, Any]] = []
    ordered = [(selection, cost, True) for selection, cost in enumeration.observable_selections]
    ordered += [(selection, cost, False) for selection, cost in reversed(enumeration.non_observable_selections)]
    for index, (selection, cost, observable) in enumerate(ordered, start=1):
        records.append({
            "selection": index,
            "cost": cost,
            "observable": observable,
            "states": " ".join("-" if pick is None else f"x{pick}" for pick in selection.picks),
        })
    return pd.DataFrame.from_records(records, columns=["selection", "cost", "observable", "states"])


def write_sweep_csv(enumeration: EnumerationReport, path: str) -> str:
    """Scrive la sequenza dei costi in CSV e restituisce il percorso"""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    sweep_frame(enumeration).to_csv(path, index=False)
    return path


def write_output(text: str, path: str) -> str:
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text if text.endswith("\n") else text + "\n")
    return path
