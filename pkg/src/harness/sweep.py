"""γ-convergence study: one BVE reference, one BTP run per γ, L² gaps at T."""

import asyncio
import logging
from pathlib import Path
from typing import Dict, Optional

from src.common.errors import ConfigValidationError, SweepError
from src.diagnostics.estimates import l2_difference
from src.harness.config import ExperimentConfig
from src.harness.reports import ConvergenceTable, write_convergence
from src.harness.run_ledger import RunLedger
from src.harness.runs import RunOutcome, record_outcome, run_model

logger = logging.getLogger(__name__)

CONVERGENCE_FILE = "convergence.csv"


def convergence_row(btp: RunOutcome, bve: RunOutcome) -> Dict[str, float]:
    report = btp.final_report
    return {
        "gamma": float(btp.gamma),
        "e_gamma": l2_difference(btp.trajectory.final.S, bve.trajectory.final.S),
        "grad_pz_norm": report.grad_p_z,
        "q_norm": report.q_norm,
        "energy_final": report.energy_E,
        "mass_residual_max": btp.monitor.max_mass_residual,
    }


async def run_gamma_sweep(cfg: ExperimentConfig, output_dir: Optional[Path] = None) -> ConvergenceTable:
    """Run all sweep members concurrently; only the coordinator touches the table and ledger."""
    if cfg.run.model != "both":
        raise ConfigValidationError("run.model", "a gamma sweep needs model = both")
    gammas = list(cfg.sweep.gamma_list)
    # the reference shares β₂ with the thinnest member
    bve_params = cfg.params_for_gamma(min(gammas))
    logger.info("gamma sweep over %s on %dx%d", gammas, cfg.grid.nx, cfg.grid.nz)

    loop = asyncio.get_running_loop()
    tasks = [loop.run_in_executor(None, lambda: run_model(cfg, "bve", params=bve_params, output_dir=output_dir))]
    for gamma in gammas:
        tasks.append(loop.run_in_executor(None, lambda g=gamma: run_model(cfg, "btp", gamma=g, output_dir=output_dir)))
    results = await asyncio.gather(*tasks, return_exceptions=True)

    bve, btp_results = results[0], results[1:]
    table = ConvergenceTable()
    failures = []
    if isinstance(bve, BaseException):
        failures.append(("bve", bve))
    for gamma, result in zip(gammas, btp_results):
        if isinstance(result, BaseException):
            failures.append((f"btp gamma={gamma:g}", result))
        elif not isinstance(bve, BaseException):
            table.rows.append(convergence_row(result, bve))
    table.rows.sort(key=lambda row: -row["gamma"])
    table.partial = bool(failures)

    if output_dir is not None:
        ledger = RunLedger(output_dir)
        for result in results:
            if isinstance(result, RunOutcome):
                record_outcome(ledger, result)
        write_convergence(table, Path(output_dir) / CONVERGENCE_FILE)
        ledger.record_table("convergence", CONVERGENCE_FILE)

    if failures:
        name, exc = failures[0]
        logger.error("sweep aborted: %s failed: %s", name, exc)
        raise SweepError(f"{name} failed: {exc}", partial_rows=table.rows) from exc
    logger.info("sweep finished: e = %s (monotone=%s)", table.errors(), table.monotone)
    return table


def gamma_sweep(cfg: ExperimentConfig, output_dir: Optional[Path] = None) -> ConvergenceTable:
    return asyncio.run(run_gamma_sweep(cfg, output_dir))
