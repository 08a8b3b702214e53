"""
Command-line entrypoint.
- run:    integrate one model (or both) and write snapshots + reports
- sweep:  gamma convergence study
- diag:   re-evaluate diagnostics on stored snapshots
- nondim: print the dimensionless parameters of the configured setup
"""

import argparse
import logging
import os
import sys
from pathlib import Path
from typing import List, Optional

from dotenv import load_dotenv

from src.common.errors import ContractViolation, FieldFormatError, ParameterError, SolverError
from src.harness.config import PhysicalBlock, build_config, load_config
from src.harness.diag import diagnose
from src.harness.formatters import format_convergence, format_diag, format_params, format_run_summary
from src.harness.run_ledger import RunLedger
from src.harness.runs import record_outcome, run_model
from src.harness.sweep import gamma_sweep

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_SOLVER = 2


class _Parser(argparse.ArgumentParser):
    """argparse with usage errors mapped to exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="TOML experiment file (defaults apply when omitted)")
    common.add_argument("--output", help="output directory (overrides [output] directory)")
    common.add_argument("--model", choices=["btp", "bve", "both"], help="model selector override")
    common.add_argument("--gamma", type=float, help="override gamma (H = gamma*L)")
    common.add_argument("--quiet", action="store_true", help="only log warnings")

    parser = _Parser(prog="thinflow", description="Thin-domain two-phase Brinkman flow simulator")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("run", parents=[common], help="run a single model")
    sub.add_parser("sweep", parents=[common], help="gamma convergence study")
    sub.add_parser("diag", parents=[common], help="re-evaluate diagnostics on stored snapshots")
    sub.add_parser("nondim", parents=[common], help="print dimensionless parameters")
    return parser


def _configure_logging(quiet: bool) -> None:
    name = os.getenv("THINFLOW_LOG_LEVEL", "INFO").upper()
    level = logging.getLevelNamesMapping().get(name)
    if quiet:
        level = logging.WARNING
    logging.basicConfig(level=logging.INFO if level is None else level, format="%(levelname)s %(name)s: %(message)s", force=True)
    if level is None:
        logger.warning("unknown THINFLOW_LOG_LEVEL %r, using INFO", name)


def _load(args):
    cfg = load_config(args.config) if args.config else build_config({})
    output = args.output or os.getenv("THINFLOW_OUTPUT_DIR")
    return cfg.with_overrides(output=output, model=args.model, gamma=args.gamma)


def cmd_run(cfg) -> int:
    output_dir = Path(cfg.output.directory)
    models = ["bve", "btp"] if cfg.run.model == "both" else [cfg.run.model]
    ledger = RunLedger(output_dir)
    for model in models:
        outcome = run_model(cfg, model, output_dir=output_dir)
        record_outcome(ledger, outcome)
        print(format_run_summary(outcome))
    return EXIT_OK


def cmd_sweep(cfg) -> int:
    table = gamma_sweep(cfg, Path(cfg.output.directory))
    print(format_convergence(table.rows, table.monotone, table.partial))
    return EXIT_OK


def cmd_diag(cfg) -> int:
    result = diagnose(cfg.output.directory)
    print(format_diag(result))
    return EXIT_OK if result.consistent else EXIT_INVALID


def cmd_nondim(cfg) -> int:
    setup = None if cfg.dimensionless is not None else (cfg.physical or PhysicalBlock()).setup()
    print(format_params(cfg.params(), setup))
    return EXIT_OK


COMMANDS = {"run": cmd_run, "sweep": cmd_sweep, "diag": cmd_diag, "nondim": cmd_nondim}


def main(argv: Optional[List[str]] = None) -> int:
    load_dotenv()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    _configure_logging(args.quiet)

    try:
        cfg = _load(args)
        return COMMANDS[args.command](cfg)
    except (ParameterError, ContractViolation, FieldFormatError) as exc:
        logger.error("invalid input: %s", exc)
        return EXIT_INVALID
    except SolverError as exc:
        logger.error("solver failure: %s", exc)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
