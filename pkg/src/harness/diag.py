"""Re-evaluate diagnostics from the files a run or sweep left behind."""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional

from src.common.errors import ParameterError
from src.diagnostics.estimates import energy_functional, l2_difference, overshoot, pressure_anisotropy
from src.harness.field_io import read_snapshot
from src.harness.reports import is_monotone, read_convergence, read_header
from src.harness.run_ledger import RunLedger
from src.harness.sweep import CONVERGENCE_FILE
from src.model.types import DimensionlessParams

logger = logging.getLogger(__name__)

# stored and recomputed e(γ) come from the same 17-digit fields
MATCH_TOL = 1e-12


@dataclass
class DiagResult:
    snapshot_rows: List[Dict] = field(default_factory=list)
    convergence_rows: List[Dict] = field(default_factory=list)
    stored_monotone: Optional[bool] = None
    recomputed_monotone: Optional[bool] = None

    @property
    def consistent(self) -> bool:
        if self.stored_monotone is not None and self.stored_monotone != self.recomputed_monotone:
            return False
        return all(row["match"] for row in self.convergence_rows)


def _final_field(output_dir: Path, entry: Dict):
    if not entry["snapshots"]:
        raise ParameterError(f"run {entry['model']} has no snapshots")
    return read_snapshot(output_dir / entry["snapshots"][-1])


def snapshot_diagnostics(output_dir: Path, run_id: str, entry: Dict) -> List[Dict]:
    params = DimensionlessParams(**entry["params"])
    rows = []
    for rel in entry["snapshots"]:
        S, time = read_snapshot(output_dir / rel)
        row = {"run": run_id, "time": time, "energy_E": energy_functional(S, params), "overshoot": overshoot(S)}
        p_path = (output_dir / rel).with_name((output_dir / rel).name.replace("S_t", "p_t", 1))
        if p_path.exists():
            p, _ = read_snapshot(p_path)
            row["grad_p_x"], row["grad_p_z"], _ = pressure_anisotropy(p, params)
        rows.append(row)
    return rows


def diagnose(output_dir) -> DiagResult:
    """Recompute snapshot functionals and, for sweeps, e(γ) and its monotonicity flag."""
    output_dir = Path(output_dir)
    if not (output_dir / "manifest.json").exists():
        raise ParameterError(f"no manifest.json in {output_dir}")
    ledger = RunLedger(output_dir)
    result = DiagResult()
    for run_id, entry in sorted(ledger.runs().items()):
        result.snapshot_rows.extend(snapshot_diagnostics(output_dir, run_id, entry))

    table_name = ledger.table("convergence")
    if table_name is None:
        return result
    table_path = output_dir / table_name
    stored = {row["gamma"]: row["e_gamma"] for row in read_convergence(table_path).rows}
    result.stored_monotone = read_header(table_path).get("monotone") == "true"

    references = ledger.get_by_model("bve")
    if not references:
        raise ParameterError("sweep output has no bve reference run")
    reference, _ = _final_field(output_dir, references[0])
    for entry in sorted(ledger.get_by_model("btp"), key=lambda e: -e["gamma"]):
        S, _ = _final_field(output_dir, entry)
        e = l2_difference(S, reference)
        stored_e = stored.get(entry["gamma"])
        match = stored_e is not None and abs(e - stored_e) <= MATCH_TOL * max(1.0, abs(stored_e))
        result.convergence_rows.append({"gamma": entry["gamma"], "e_gamma": e, "stored_e_gamma": stored_e, "match": match})
    result.recomputed_monotone = is_monotone(result.convergence_rows)
    if not result.consistent:
        logger.warning("stored convergence table disagrees with recomputation from snapshots")
    return result
