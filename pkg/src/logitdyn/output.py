"""CSV writers and the reference tables of update scalers and entropy measures."""
from __future__ import annotations

import csv
import math
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .bandit import SweepCell, TrajectoryRecord
from .simplex import entropy_report, uniform
from .update import score_vector

TRAJECTORY_HEADER = ("step", "chosen", "advantage", "p_chosen", "collision", "shannon", "renyi2", "update_norm")
SWEEP_HEADER = ("p_chosen", "collision", "sensitivity")
INFEASIBLE = "infeasible"


def fmt12(x: float) -> str:
    """12 significant digits."""
    return f"{x:.12g}"


def fmt_exact(x: float) -> str:
    """Shortest string that parses back to the same double."""
    return repr(float(x))


def write_trajectory_csv(path, records: Sequence[TrajectoryRecord]) -> None:
    # Trajectory floats are written round-trip exact: the closed-form norm
    # recheck near p_chosen -> 1 needs more than 12 digits of p_chosen.
    header = list(TRAJECTORY_HEADER)
    snapshots = bool(records) and records[0].logits_snapshot is not None
    if snapshots:
        header += [f"z{j}" for j in range(len(records[0].logits_snapshot))]
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for r in records:
            row = [str(r.step), str(r.chosen)] + [
                fmt_exact(v) for v in (r.advantage, r.p_chosen, r.collision, r.shannon, r.renyi2, r.update_norm)
            ]
            if snapshots:
                row += [fmt_exact(v) for v in r.logits_snapshot]
            w.writerow(row)


def read_trajectory_csv(path) -> list[dict]:
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    for row in rows:
        for k, v in row.items():
            row[k] = int(v) if k in ("step", "chosen") else float(v)
    return rows


def write_sweep_csv(path, cells: Iterable[SweepCell]) -> None:
    # round-trip exact so the sqrt(2) corner survives to 1e-12
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SWEEP_HEADER)
        for cell in cells:
            value = INFEASIBLE if cell.sensitivity is None else fmt_exact(cell.sensitivity)
            w.writerow([fmt_exact(cell.p_chosen), fmt_exact(cell.collision), value])


def _direction(delta: float) -> str:
    if delta > 0:
        return "increase"
    if delta < 0:
        return "decrease"
    return "none"


def chosen_action_table(p_values=(0.1, 0.5, 0.9)) -> list[dict]:
    """Update scaler ``1 - P_c`` of the chosen logit, with its direction for ``A = +1`` and ``A = -1``."""
    rows = []
    for sign in (1, -1):
        for pc in p_values:
            scaler = score_vector([pc, 1.0 - pc], 0)[0]
            rows.append({"advantage_sign": "+" if sign > 0 else "-", "p_chosen": pc,
                         "scaler": scaler, "direction": _direction(sign * scaler)})
    return rows


def other_action_table(p_values=(0.1, 0.5, 0.8)) -> list[dict]:
    """Update scaler ``-P_o`` of a non-chosen logit, with its direction for ``A = +1`` and ``A = -1``."""
    rows = []
    for sign in (1, -1):
        for po in p_values:
            scaler = score_vector([1.0 - po, po], 0)[1]
            rows.append({"advantage_sign": "+" if sign > 0 else "-", "p_other": po,
                         "scaler": scaler, "direction": _direction(sign * scaler)})
    return rows


def entropy_table(ns=(2, 4, 10), two_point=(0.5, 0.9, 0.99), near_det_eps=1e-6, near_det_n=4) -> list[dict]:
    """Collision probability, H2 and Shannon entropy for reference distributions."""
    cases = [(f"uniform n={n}", uniform(n)) for n in ns]
    cases += [(f"two-point p={p}", np.array([p, 1.0 - p])) for p in two_point]
    rest = np.full(near_det_n - 1, near_det_eps / (near_det_n - 1))
    cases.append((f"near-deterministic eps={near_det_eps:g}", np.concatenate([[1.0 - near_det_eps], rest])))
    rows = []
    for name, p in cases:
        rep = entropy_report(p)
        rows.append({"distribution": name, "collision": rep.collision, "renyi2": rep.renyi2, "shannon": rep.shannon})
    return rows


def write_table_csv(path, rows: list[dict]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(list(rows[0]))
        for row in rows:
            w.writerow([fmt12(v) if isinstance(v, float) else v for v in row.values()])


TABLE_FILES = {
    "table1_chosen.csv": chosen_action_table,
    "table2_other.csv": other_action_table,
    "entropy_measures.csv": entropy_table,
}


def write_tables(out_dir) -> list[Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, make in TABLE_FILES.items():
        path = out_dir / name
        write_table_csv(path, make())
        paths.append(path)
    return paths


def eq9_recheck(row: dict, eta: float) -> float:
    """Relative gap between a logged update norm and ``eta |A| sqrt(1 - 2 p_c + C)``."""
    expected = eta * abs(row["advantage"]) * math.sqrt(max(0.0, 1.0 - 2.0 * row["p_chosen"] + row["collision"]))
    if expected == 0.0:
        return abs(row["update_norm"])
    return abs(row["update_norm"] - expected) / expected
