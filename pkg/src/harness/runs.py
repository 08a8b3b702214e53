"""Single-model runs and their on-disk layout.

    <output>/<model>[_gamma_<γ>]/S_t<time>.csv   (+ p_t<time>.csv for btp)
    <output>/<model>[_gamma_<γ>]/reports.csv
"""

import logging
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import List, Optional

from src.diagnostics.monitor import RunMonitor
from src.harness.config import ExperimentConfig
from src.harness.field_io import write_field
from src.harness.reports import write_reports
from src.harness.run_ledger import RunLedger
from src.model.types import BoundaryData, DimensionlessParams
from src.solvers.registry import get_solver
from src.solvers.state import Trajectory

logger = logging.getLogger(__name__)


def format_value(value: float) -> str:
    return format(float(value), "g")


def run_dir_name(model: str, gamma: Optional[float] = None) -> str:
    return model if gamma is None else f"{model}_gamma_{format_value(gamma)}"


@dataclass
class RunOutcome:
    model: str
    params: DimensionlessParams
    trajectory: Trajectory
    monitor: RunMonitor
    gamma: Optional[float] = None
    run_dir: Optional[Path] = None
    snapshot_paths: List[str] = field(default_factory=list)

    @property
    def run_id(self) -> str:
        return run_dir_name(self.model, self.gamma)

    @property
    def final_report(self):
        return self.trajectory.reports[-1]


def run_model(
    cfg: ExperimentConfig,
    model: str,
    gamma: Optional[float] = None,
    params: Optional[DimensionlessParams] = None,
    output_dir: Optional[Path] = None,
    bc: Optional[BoundaryData] = None,
    strict: bool = False,
) -> RunOutcome:
    """Run one model to T with a RunMonitor; write its files when `output_dir` is given."""
    if params is None:
        params = cfg.params_for_gamma(gamma) if gamma is not None else cfg.params()
    solver = get_solver(model)(params, bc or BoundaryData(), cfg.grid_spec, cfg.timestep_config)
    monitor = RunMonitor(strict=strict)
    trajectory = solver.run(cfg.snapshot_times, monitor)
    outcome = RunOutcome(model=model, params=params, trajectory=trajectory, monitor=monitor, gamma=gamma)
    if output_dir is not None:
        write_run(outcome, Path(output_dir))
    return outcome


def write_run(outcome: RunOutcome, output_dir: Path) -> Path:
    run_dir = output_dir / outcome.run_id
    paths = []
    for snap in outcome.trajectory.snapshots:
        stamp = format_value(snap.time)
        paths.append(write_field(snap.S, run_dir / f"S_t{stamp}.csv", time=snap.time))
        p = getattr(snap, "p", None)
        if p is not None:
            write_field(p, run_dir / f"p_t{stamp}.csv", time=snap.time)
    write_reports(outcome.trajectory.reports, run_dir / "reports.csv", outcome.model, outcome.gamma)
    outcome.run_dir = run_dir
    outcome.snapshot_paths = [str(path.relative_to(output_dir)) for path in paths]
    logger.info("wrote %d snapshots to %s", len(paths), run_dir)
    return run_dir


def record_outcome(ledger: RunLedger, outcome: RunOutcome) -> None:
    ledger.record_run(
        outcome.run_id,
        model=outcome.model,
        params=asdict(outcome.params),
        snapshots=outcome.snapshot_paths,
        gamma=outcome.gamma,
        steps=outcome.trajectory.steps,
        pressure_solves=outcome.trajectory.pressure_solves,
        reports=f"{outcome.run_id}/reports.csv",
    )
