"""Config ingestion, experiment drivers and file I/O."""

from .config import (
    ExperimentConfig,
    GridBlock,
    PhysicalBlock,
    DimensionlessBlock,
    RunBlock,
    SweepBlock,
    TimeStepBlock,
    OutputBlock,
    load_config,
    build_config,
)
from .field_io import write_field, read_field, read_snapshot
from .reports import ConvergenceTable, write_reports, read_reports, write_convergence, read_convergence
from .run_ledger import RunLedger
from .runs import RunOutcome, run_model, write_run, record_outcome
from .sweep import gamma_sweep, run_gamma_sweep
from .diag import diagnose, DiagResult
from .cli import main

__all__ = [
    "ExperimentConfig",
    "GridBlock",
    "PhysicalBlock",
    "DimensionlessBlock",
    "RunBlock",
    "SweepBlock",
    "TimeStepBlock",
    "OutputBlock",
    "load_config",
    "build_config",
    "write_field",
    "read_field",
    "read_snapshot",
    "ConvergenceTable",
    "write_reports",
    "read_reports",
    "write_convergence",
    "read_convergence",
    "RunLedger",
    "RunOutcome",
    "run_model",
    "write_run",
    "record_outcome",
    "gamma_sweep",
    "run_gamma_sweep",
    "diagnose",
    "DiagResult",
    "main",
]
