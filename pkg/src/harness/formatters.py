"""formatters for the CLI"""

from typing import Dict, List

from src.model.types import DimensionlessParams, PhysicalSetup

__all__ = [
    'format_params',
    'format_convergence',
    'format_run_summary',
    'format_diag',
]


def format_params(params: DimensionlessParams, setup: PhysicalSetup = None) -> str:
    """format dimensionless parameters (and the physical block they came from)"""
    output = ["=== Dimensionless parameters ==="]
    output.append(f"gamma = {params.gamma:.6g}")
    output.append(f"beta1 = {params.beta1:.6g}")
    output.append(f"beta2 = {params.beta2:.6g}")
    output.append(f"M = {params.M:.6g}")
    output.append(f"u_hat_inflow = {params.u_hat_inflow:.6g}")
    output.append(f"T = {params.end_time_T:.6g}")
    if setup is not None:
        output.append("")
        output.append(f"time scale L/q = {setup.time_scale:.6g}")
        output.append(f"anisotropy kz/kx = {setup.anisotropy_ratio:.6g}")
    return "\n".join(output)


def format_convergence(rows: List[Dict], monotone: bool, partial: bool = False) -> str:
    if not rows:
        return "No convergence rows."
    output = ["=== Convergence to the vertical-equilibrium limit ==="]
    output.append(f"{'gamma':>10} {'e(gamma)':>14} {'|dz p|':>12} {'|Q|':>12}")
    for row in rows:
        output.append(
            f"{row['gamma']:>10.4g} {row['e_gamma']:>14.6e} {row['grad_pz_norm']:>12.4e} {row['q_norm']:>12.4e}"
        )
    output.append("")
    output.append(f"monotone: {'yes' if monotone else 'no'}")
    if partial:
        output.append("partial: some members failed")
    return "\n".join(output)


def format_run_summary(outcome) -> str:
    traj = outcome.trajectory
    report = outcome.final_report if traj.reports else None
    output = [f"=== {outcome.run_id} ==="]
    output.append(f"steps: {traj.steps}, pressure solves: {traj.pressure_solves}, snapshots: {len(traj.snapshots)}")
    if report is not None:
        output.append(f"t = {report.time:.6g}: E = {report.energy_E:.6e} (bound {report.energy_bound:.6e})")
        output.append(f"   max mass residual {outcome.monitor.max_mass_residual:.3e}, "
                      f"div residual {report.div_residual:.3e}, overshoot {report.overshoot:.3e}")
    if outcome.run_dir is not None:
        output.append(f"   files: {outcome.run_dir}")
    return "\n".join(output)


def format_diag(result) -> str:
    output = ["=== Snapshot diagnostics ==="]
    for row in result.snapshot_rows:
        line = f"{row['run']:<20} t={row['time']:<8.4g} E={row['energy_E']:.6e} overshoot={row['overshoot']:.2e}"
        if "grad_p_z" in row:
            line += f" |dz p|={row['grad_p_z']:.4e}"
        output.append(line)
    if result.convergence_rows:
        output.append("")
        output.append("=== Recomputed convergence ===")
        for row in result.convergence_rows:
            status = "ok" if row["match"] else "MISMATCH"
            output.append(f"gamma={row['gamma']:<8.4g} e={row['e_gamma']:.6e} [{status}]")
        output.append(f"monotone: stored={result.stored_monotone} recomputed={result.recomputed_monotone}")
    return "\n".join(output)
