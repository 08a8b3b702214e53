"""Report and convergence tables (CSV behind a `# format=1 ...` comment line)."""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Union

import polars as pl

from src.diagnostics.estimates import EstimateReport

FORMAT_VERSION = 1

REPORT_COLUMNS = list(EstimateReport.__dataclass_fields__)
CONVERGENCE_COLUMNS = ["gamma", "e_gamma", "grad_pz_norm", "q_norm", "energy_final", "mass_residual_max"]


@dataclass
class ConvergenceTable:
    rows: List[Dict[str, float]] = field(default_factory=list)
    partial: bool = False

    @property
    def monotone(self) -> bool:
        return is_monotone(self.rows)

    def errors(self) -> List[float]:
        return [row["e_gamma"] for row in self.rows]

    def to_frame(self) -> pl.DataFrame:
        return pl.from_dicts(self.rows, schema={c: pl.Float64 for c in CONVERGENCE_COLUMNS})


def is_monotone(rows: Sequence[Dict[str, float]]) -> bool:
    """e(γ) strictly decreasing along rows ordered by decreasing γ."""
    ordered = sorted(rows, key=lambda r: -r["gamma"])
    return all(b["e_gamma"] < a["e_gamma"] for a, b in zip(ordered, ordered[1:]))


def _header(**keys) -> str:
    parts = [f"format={FORMAT_VERSION}"]
    for key, value in keys.items():
        if isinstance(value, bool):
            value = str(value).lower()
        parts.append(f"{key}={value}")
    return "# " + " ".join(parts) + "\n"


def read_header(path: Union[str, Path]) -> Dict[str, str]:
    with open(path, "r") as f:
        first = f.readline().strip()
    if not first.startswith("#"):
        return {}
    pairs = (token.split("=", 1) for token in first[1:].split() if "=" in token)
    return {k: v for k, v in pairs}


def write_reports(
    reports: Sequence[EstimateReport],
    path: Union[str, Path],
    model: str,
    gamma: Optional[float] = None,
) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame = pl.from_dicts([r.to_row() for r in reports], schema={c: pl.Float64 for c in REPORT_COLUMNS})
    keys = {"model": model}
    if gamma is not None:
        keys["gamma"] = repr(float(gamma))
    path.write_text(_header(**keys) + frame.write_csv())
    return path


def read_reports(path: Union[str, Path]) -> pl.DataFrame:
    return pl.read_csv(path, comment_prefix="#")


def write_convergence(table: ConvergenceTable, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    header = _header(monotone=table.monotone, partial=table.partial)
    path.write_text(header + table.to_frame().write_csv())
    return path


def read_convergence(path: Union[str, Path]) -> ConvergenceTable:
    path = Path(path)
    meta = read_header(path)
    frame = pl.read_csv(path, comment_prefix="#", schema={c: pl.Float64 for c in CONVERGENCE_COLUMNS})
    return ConvergenceTable(rows=frame.to_dicts(), partial=meta.get("partial") == "true")
