"""Field snapshots as CSV.

    # format=1 nx=<nx> nz=<nz> time=<t>
    v(0,0),v(1,0),...,v(nx-1,0)        <- bottom row, height dz/2
    ...

Values are written with 17 significant digits so reading restores every
float exactly.
"""

import re
from pathlib import Path
from typing import Tuple, Union

import numpy as np

from src.common.errors import FieldFormatError
from src.grid.fields import GridSpec, ScalarField

FORMAT_VERSION = 1
_HEADER = re.compile(r"^#\s*(?:format=(\d+)\s+)?nx=(\d+)\s+nz=(\d+)\s+time=(\S+)\s*$")


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def write_field(S: ScalarField, path: Union[str, Path], time: float = 0.0) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    g = S.grid
    lines = [f"# format={FORMAT_VERSION} nx={g.nx} nz={g.nz} time={_fmt(time)}"]
    for j in range(g.nz):
        lines.append(",".join(_fmt(v) for v in S.values[:, j]))
    path.write_text("\n".join(lines) + "\n")
    return path


def read_snapshot(path: Union[str, Path]) -> Tuple[ScalarField, float]:
    """Field and its time stamp; FieldFormatError names the offending line."""
    lines = Path(path).read_text().splitlines()
    if not lines:
        raise FieldFormatError(1, "empty file")
    match = _HEADER.match(lines[0].strip())
    if match is None:
        raise FieldFormatError(1, f"malformed header {lines[0]!r}")
    version = int(match.group(1) or FORMAT_VERSION)
    nx, nz = int(match.group(2)), int(match.group(3))
    if version != FORMAT_VERSION:
        raise FieldFormatError(1, f"unsupported format version {version}")
    try:
        time = float(match.group(4))
        grid = GridSpec(nx, nz)
    except ValueError as exc:
        raise FieldFormatError(1, str(exc)) from exc

    rows = lines[1:]
    while rows and not rows[-1].strip():
        rows.pop()
    values = np.empty((nx, nz))
    for j in range(nz):
        lineno = j + 2
        if j >= len(rows):
            raise FieldFormatError(lineno, f"expected {nz} rows, found {len(rows)}")
        cells = rows[j].split(",")
        if len(cells) != nx:
            raise FieldFormatError(lineno, f"expected {nx} values, found {len(cells)}")
        try:
            values[:, j] = [float(c) for c in cells]
        except ValueError as exc:
            raise FieldFormatError(lineno, str(exc)) from exc
    if len(rows) > nz:
        raise FieldFormatError(nz + 2, f"expected {nz} rows, found {len(rows)}")
    if not np.all(np.isfinite(values)):
        raise FieldFormatError(2, "non-finite value")
    return ScalarField(grid, values), time


def read_field(path: Union[str, Path]) -> ScalarField:
    return read_snapshot(path)[0]
