"""File formats: signal/observation CSV, scores, peaks, Laplacian dump, manifest.

Signals are single-column CSV behind a two-line grid header::

    # dt=<seconds>
    # t0=<seconds>
    <sample>
    ...

Observation sets share the same header with one comma-separated observation
per row.  All floats are written with round-trip precision (repr), so a
rewrite of identical data is byte-identical.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .centrality import CentralityScores
from .signal_model import ObservationSet, Signal


def _fmt(x: float) -> str:
    return repr(float(x))


def _read_grid_header(lines: list[str], path: Path) -> tuple[float, float]:
    if len(lines) < 2 or not lines[0].startswith("# dt=") or not lines[1].startswith("# t0="):
        raise ValueError(f"{path}: expected '# dt=' and '# t0=' header lines")
    return float(lines[0][5:]), float(lines[1][5:])


def write_signal_csv(path: str | Path, sig: Signal) -> None:
    lines = [f"# dt={_fmt(sig.dt)}", f"# t0={_fmt(sig.t0)}"]
    lines.extend(_fmt(x) for x in sig.samples)
    Path(path).write_text("\n".join(lines) + "\n")


def read_signal_csv(path: str | Path) -> Signal:
    path = Path(path)
    lines = path.read_text().splitlines()
    dt, t0 = _read_grid_header(lines, path)
    samples = np.array([float(line) for line in lines[2:] if line], dtype=float)
    return Signal(samples, dt=dt, t0=t0)


def write_observations_csv(path: str | Path, obs: ObservationSet) -> None:
    lines = [f"# dt={_fmt(obs.dt)}", f"# t0={_fmt(obs.t0)}"]
    lines.extend(",".join(_fmt(x) for x in row) for row in obs.data)
    Path(path).write_text("\n".join(lines) + "\n")


def read_observations_csv(path: str | Path) -> ObservationSet:
    path = Path(path)
    lines = path.read_text().splitlines()
    dt, t0 = _read_grid_header(lines, path)
    rows = [
        np.array([float(tok) for tok in line.split(",")], dtype=float)
        for line in lines[2:]
        if line
    ]
    if not rows:
        raise ValueError(f"{path}: no observations")
    lengths = {row.size for row in rows}
    if len(lengths) != 1:
        raise ValueError(f"{path}: rows have mixed lengths {sorted(lengths)}")
    return ObservationSet(np.stack(rows), dt=dt, t0=t0)


def write_scores_csv(path: str | Path, scores: CentralityScores, ranking: np.ndarray) -> None:
    """Scores in ranking order: most central node first."""
    lines = ["node,score,rank"]
    for rank, node in enumerate(np.asarray(ranking)):
        lines.append(f"{int(node)},{_fmt(scores.c[node])},{rank}")
    Path(path).write_text("\n".join(lines) + "\n")


def write_peaks_csv(path: str | Path, peaks: np.ndarray, sig: Signal) -> None:
    lines = ["index,time"]
    for p in np.asarray(peaks):
        lines.append(f"{int(p)},{_fmt(sig.t0 + p * sig.dt)}")
    Path(path).write_text("\n".join(lines) + "\n")


def write_laplacian_coo(path: str | Path, matrix) -> None:
    """Coordinate-format dump: one 'row,col,value' line per stored entry,
    sorted by (row, col)."""
    coo = matrix.tocoo()
    order = np.lexsort((coo.col, coo.row))
    lines = ["row,col,value"]
    for idx in order:
        lines.append(f"{int(coo.row[idx])},{int(coo.col[idx])},{_fmt(coo.data[idx])}")
    Path(path).write_text("\n".join(lines) + "\n")


def write_manifest(path: str | Path, records: list[dict]) -> None:
    """JSON-lines run manifest; first record carries the replayable parameters."""
    with open(path, "w") as fh:
        for record in records:
            fh.write(json.dumps(record, sort_keys=True) + "\n")


def read_manifest(path: str | Path) -> list[dict]:
    records = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line:
                records.append(json.loads(line))
    return records
