import json
from pathlib import Path
from typing import Dict, List, Optional


class RunLedger:
    """
    JSON-backed manifest of the runs written to an output directory.
    One entry per run directory: model, γ, parameters and snapshot paths.
    Entries carry no timestamps so identical configs give identical files.
    """

    def __init__(self, output_dir: Path, manifest_name: str = "manifest.json"):
        self.manifest_file = Path(output_dir) / manifest_name
        self._ensure_data_dir()

        if not self.manifest_file.exists():
            self._write_memory({})
        self.memory = self._read_memory()

    # --- internal file operations ---

    def _ensure_data_dir(self):
        self.manifest_file.parent.mkdir(parents=True, exist_ok=True)

    def _read_memory(self) -> Dict:
        with open(self.manifest_file, "r") as f:
            return json.load(f)

    def _write_memory(self, data: Dict):
        with open(self.manifest_file, "w") as f:
            json.dump(data, f, indent=2, sort_keys=True)
            f.write("\n")

    # --- ledger operations ---

    def record_run(
        self,
        run_id: str,
        model: str,
        params: Dict,
        snapshots: List[str],
        gamma: Optional[float] = None,
        steps: int = 0,
        pressure_solves: int = 0,
        reports: Optional[str] = None,
    ) -> None:
        """Add or replace the entry for `run_id` (the run directory name)."""
        self.memory[run_id] = {
            "model": model,
            "gamma": gamma,
            "params": params,
            "snapshots": list(snapshots),
            "steps": steps,
            "pressure_solves": pressure_solves,
            "reports": reports,
        }
        self._write_memory(self.memory)

    def record_table(self, name: str, path: str) -> None:
        self.memory.setdefault("_tables", {})[name] = path
        self._write_memory(self.memory)

    def get_run(self, run_id: str) -> Optional[Dict]:
        return self.memory.get(run_id)

    def get_by_model(self, model: str) -> List[Dict]:
        return [entry for key, entry in self.runs().items() if entry["model"] == model]

    def runs(self) -> Dict[str, Dict]:
        return {k: v for k, v in self.memory.items() if not k.startswith("_")}

    def table(self, name: str) -> Optional[str]:
        return self.memory.get("_tables", {}).get(name)

    def clear(self):
        self.memory = {}
        self._write_memory(self.memory)
