#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
obsel - Selezione dei sensori a costo minimo per sistemi strutturalmente ciclici

Questo script principale coordina tutti i componenti del sistema:
- Analisi strutturale (rango strutturale, decomposizione in SCC parent/child)
- Riduzione dei costi alle SCC parent e assegnamento con il metodo ungherese
- Verifica del risolutore contro l'oracolo a forza bruta
- Generazione di istanze casuali riproducibili
"""

import argparse
import logging
import sys
from typing import List, Optional

from assignment import InsufficientSensorsError, solve_lsap
from config import Config
from digraph import InstanceError, load_system_file, serialize_system
from oracle import GeneratorConfig, GeneratorConfigError, OracleError, Topology, generate
from pipeline import Solver, analyze_instance, exit_code_for, solve_instance, verify_batch, verify_instance
from structural import is_structurally_cyclic, structural_rank
from tools.report_generator import (
    render_analysis,
    render_batch,
    render_solution,
    render_verification,
    report_to_json,
    write_output,
    write_sweep_csv
)

logger = logging.getLogger(Config.APP_NAME)

EPILOG = "exit codes:\n" + "\n".join(f"  {code}  {text}" for code, text in Config.EXIT_CODES.items())


def _seed(value: str) -> int:
    seed = int(value, 0)
    if not 0 <= seed < 2 ** 64:
        raise argparse.ArgumentTypeError(f"seed must be an unsigned 64-bit integer, got {value}")
    return seed


def _non_negative_float(value: str) -> float:
    number = float(value)
    if not number >= 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative number, got {value}")
    return number


def _positive_int(value: str) -> int:
    number = int(value)
    if number < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return number


def _add_generator_flags(parser: argparse.ArgumentParser, default_topology: Optional[str]) -> None:
    parser.add_argument("--topology", choices=[topology.value for topology in Topology], default=default_topology,
                        help="Topologia del sistema generato")
    parser.add_argument("--n", type=_positive_int, help="Numero di stati")
    parser.add_argument("--parents", type=_positive_int, help="Numero di SCC parent")
    parser.add_argument("--seed", type=_seed, help="Seme a 64 bit (default: OBSEL_SEED o 0)")
    parser.add_argument("--nonrealizable", type=float, default=Config.DEFAULT_NONREALIZABLE_PROB,
                        help="Probabilità che una coppia sensore-stato non sia realizzabile")


def build_parser() -> argparse.ArgumentParser:
    """Costruisce il parser della riga di comando"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--verbose", "-v", action="store_true", default=argparse.SUPPRESS,
                        help="Log informativi su stderr")

    parser = argparse.ArgumentParser(
        prog=Config.APP_NAME,
        description="Minimum-cost sensor selection for structurally cyclic systems",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
        parents=[common],
    )
    parser.add_argument("--version", action="version", version=f"{Config.APP_NAME} {Config.VERSION}")
    subparsers = parser.add_subparsers(dest="command", required=True)

    analyze = subparsers.add_parser("analyze", parents=[common], help="Analisi strutturale dell'istanza",
                                    epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)
    analyze.add_argument("instance", help="File JSON dell'istanza")
    analyze.add_argument("--json", action="store_true", help="Report JSON invece della tabella")
    analyze.add_argument("--output", "-o", help="Scrive il report su file invece che su stdout")

    solve = subparsers.add_parser("solve", parents=[common], help="Selezione ottima dei sensori",
                                  epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)
    solve.add_argument("instance", help="File JSON dell'istanza")
    solve.add_argument("--json", action="store_true", help="Report JSON invece della tabella")
    solve.add_argument("--output", "-o", help="Scrive il report su file invece che su stdout")
    solve.add_argument("--tolerance", type=_non_negative_float, default=Config.TOLERANCE,
                       help="Tolleranza additiva sui certificati duali")

    verify = subparsers.add_parser("verify", parents=[common], help="Confronto con l'oracolo a forza bruta",
                                   epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)
    verify.add_argument("instance", nargs="?", help="File JSON dell'istanza (omesso con --batch)")
    verify.add_argument("--json", action="store_true", help="Report JSON invece della tabella")
    verify.add_argument("--csv", help="Scrive la sequenza dei costi delle selezioni in CSV")
    verify.add_argument("--tolerance", type=_non_negative_float, default=Config.TOLERANCE,
                        help="Tolleranza sul confronto dei costi")
    verify.add_argument("--oracle-cap", type=_positive_int, default=Config.ORACLE_MAX_SENSORS,
                        help="Numero massimo di sensori per l'enumerazione")
    verify.add_argument("--batch", type=_positive_int, help="Verifica K istanze generate con semi consecutivi")
    verify.add_argument("--workers", type=_positive_int, default=Config.BATCH_WORKERS,
                        help="Processi per la verifica batch")
    _add_generator_flags(verify, Topology.PARENT_CHAIN.value)

    gen = subparsers.add_parser("gen", parents=[common], help="Genera un'istanza casuale",
                                epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)
    _add_generator_flags(gen, None)
    gen.add_argument("--m", type=_positive_int, help="Numero di sensori (uguale alle SCC parent)")
    gen.add_argument("--sccs", type=_positive_int, help="Numero totale di SCC (random-cyclic)")
    gen.add_argument("--cost-low", type=float, default=Config.DEFAULT_COST_RANGE[0], help="Costo minimo")
    gen.add_argument("--cost-high", type=float, default=Config.DEFAULT_COST_RANGE[1], help="Costo massimo")
    gen.add_argument("--integer-costs", action="store_true", help="Costi interi in [cost-low, cost-high]")
    gen.add_argument("--output", "-o", help="File di output (default: stdout)")
    return parser


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        write_output(text, output)
        logger.info(f"Report scritto in {output}")
    else:
        print(text)


def _fail(message: str, code: int) -> int:
    print(f"{Config.APP_NAME}: {message}", file=sys.stderr)
    return code


def _generator_config(args: argparse.Namespace, batch: bool = False) -> GeneratorConfig:
    topology = Topology(args.topology)
    n, parents = args.n, args.parents
    if batch and topology is not Topology.EXAMPLE1:
        n = n if n is not None else 8
        parents = parents if parents is not None else 4
    sccs = getattr(args, "sccs", None)
    if batch and topology is Topology.RANDOM_CYCLIC and sccs is None:
        sccs = min(n, parents + 2)
    cost_range = (getattr(args, "cost_low", Config.DEFAULT_COST_RANGE[0]),
                  getattr(args, "cost_high", Config.DEFAULT_COST_RANGE[1]))
    return GeneratorConfig(
        n=n,
        m=getattr(args, "m", None),
        seed=args.seed if args.seed is not None else Config.DEFAULT_SEED,
        cost_range=cost_range,
        nonrealizable_prob=args.nonrealizable,
        topology=topology,
        parents=parents,
        scc_count=sccs,
        integer_costs=getattr(args, "integer_costs", False),
    )


def cmd_analyze(args: argparse.Namespace) -> int:
    system, costs = load_system_file(args.instance)
    report = analyze_instance(system, costs)
    _emit(report_to_json(report) if args.json else render_analysis(report), args.output)
    code = exit_code_for(report)
    if code != Config.EXIT_OK:
        return _fail(report["verdict"], code)
    return code


def cmd_solve(args: argparse.Namespace, solver: Solver = solve_lsap) -> int:
    system, costs = load_system_file(args.instance)
    report = solve_instance(system, costs, args.tolerance, solver)
    _emit(report_to_json(report) if args.json else render_solution(report), args.output)
    code = exit_code_for(report)
    if code != Config.EXIT_OK:
        return _fail(report["verdict"], code)
    return code


def cmd_verify(args: argparse.Namespace, solver: Solver = solve_lsap) -> int:
    if args.batch:
        reports = verify_batch(_generator_config(args, batch=True), args.batch, args.tolerance,
                               args.oracle_cap, args.workers)
        print(report_to_json(reports) if args.json else render_batch(reports))
        if all(report["match"] for report in reports):
            return Config.EXIT_OK
        return _fail("solver and oracle disagree on at least one instance", Config.EXIT_ORACLE_MISMATCH)

    if not args.instance:
        return _fail("verify needs an INSTANCE file or --batch K", Config.EXIT_INPUT_ERROR)
    system, costs = load_system_file(args.instance)
    if not is_structurally_cyclic(system):
        rank = structural_rank(system).size
        return _fail(f"not structurally cyclic: structural rank {rank} < n={system.n}", Config.EXIT_NOT_CYCLIC)

    report, enumeration = verify_instance(system, costs, args.tolerance, args.oracle_cap, solver)
    if args.csv:
        write_sweep_csv(enumeration, args.csv)
        logger.info(f"Sequenza dei costi scritta in {args.csv}")
    print(report_to_json(report) if args.json else render_verification(report))
    if report["match"]:
        return Config.EXIT_OK
    return _fail(f"solver and oracle disagree: {report['detail']}", Config.EXIT_ORACLE_MISMATCH)


def cmd_gen(args: argparse.Namespace) -> int:
    if args.topology is None:
        return _fail("gen needs --topology", Config.EXIT_INPUT_ERROR)
    system, costs = generate(_generator_config(args))
    _emit(serialize_system(system, costs, indent=2), args.output)
    return Config.EXIT_OK


def main(argv: Optional[List[str]] = None, solver: Solver = solve_lsap) -> int:
    """Funzione principale del programma"""
    parser = build_parser()
    args = parser.parse_args(argv)

    level = logging.INFO if getattr(args, "verbose", False) else getattr(logging, Config.LOG_LEVEL, logging.WARNING)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)

    try:
        if args.command == "analyze":
            return cmd_analyze(args)
        if args.command == "solve":
            return cmd_solve(args, solver)
        if args.command == "verify":
            return cmd_verify(args, solver)
        return cmd_gen(args)
    except InstanceError as e:
        return _fail(f"input error: {e}", Config.EXIT_INPUT_ERROR)
    except InsufficientSensorsError as e:
        return _fail(str(e), Config.EXIT_INSUFFICIENT_SENSORS)
    except GeneratorConfigError as e:
        return _fail(f"generator error: {e}", Config.EXIT_INPUT_ERROR)
    except OracleError as e:
        return _fail(f"oracle error: {e}", Config.EXIT_INPUT_ERROR)


if __name__ == "__main__":
    sys.exit(main())
