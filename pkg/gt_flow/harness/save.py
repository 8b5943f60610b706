import csv
from datetime import datetime
import json
from pathlib import Path
from typing import Any, Sequence

from absl import logging
from ml_collections import ConfigDict
import numpy as np
import yaml

from gt_flow.gt_core import ParticleConfig
from gt_flow.records import ResultRecord, plain

TRAJECTORY_HEADER = ["trajectory_id", "step", "particle_index", "position"]
LATTICE_PATH_HEADER = [
    "trajectory_id",
    "path_index",
    "level",
    "position",
    "next_level",
    "next_position",
]


class ResultSaver:
    """ResultSaver class for experiments.

    Writes every artifact of one run into <output_dir>/<kind>_<timestamp>.
    """

    def __init__(self, output_dir: str | Path, kind: str, run_name: str | None = None) -> None:
        """Creates the run directory.

        Args:
            output_dir: A string or path-like path to the results root.
            kind: The experiment kind, used as directory prefix.
            run_name: Overrides the timestamp suffix.
        """
        run_name = run_name or datetime.now().strftime("%m-%d-%Y_%H-%M-%S")
        dir = Path(output_dir).joinpath(f"{kind}_{run_name}")
        candidate, i = dir, 1
        while candidate.exists():
            candidate = dir.with_name(f"{dir.name}_{i}")
            i += 1
        candidate.mkdir(parents=True)
        self.dir = candidate.absolute()
        logging.info(f"Saving results to {self.dir}")

    def save_config(self, config: ConfigDict) -> Path:
        path = self.dir.joinpath("config.yaml")
        with path.open("w") as f:
            yaml.dump(config.to_dict(), f)
        return path

    def save_json(self, name: str, content: dict[str, Any]) -> Path:
        path = self.dir.joinpath(f"{name}.json")
        with path.open("w") as f:
            json.dump(plain(content), f, indent=2)
        return path

    def save_table(self, name: str, rows: Sequence[dict[str, Any]]) -> Path:
        path = self.dir.joinpath(f"{name}.csv")
        header = list(rows[0].keys()) if rows else []
        with path.open("w", newline="") as f:
            writer = csv.DictWriter(f, fieldnames=header)
            writer.writeheader()
            for row in rows:
                writer.writerow(plain(row))
        return path

    def save_record(self, record: ResultRecord) -> Path:
        for name, rows in record.tables.items():
            self.save_table(name, rows)
        return self.save_json("result", record.to_dict())

    def save_kernel(self, name: str, matrix, metadata: dict[str, Any]) -> Path:
        """Dense matrix as CSV with a JSON sidecar {N, p, zPrime, wPrime, k}."""
        path = self.dir.joinpath(f"{name}.csv")
        np.savetxt(path, np.asarray(matrix, dtype=float), delimiter=",")
        self.save_json(name, metadata)
        return path

    def save_grid(self, name: str, xs, ys, values, metadata: dict[str, Any]) -> Path:
        """x, y, value rows with a JSON sidecar {p, zPrime, wPrime, t, truncation, tol}."""
        values = np.asarray(values, dtype=float)
        rows = [
            {"x": float(x), "y": float(y), "value": float(values[a, b])}
            for a, x in enumerate(xs)
            for b, y in enumerate(ys)
        ]
        self.save_json(name, metadata)
        return self.save_table(name, rows)

    def save_trajectories(
        self, name: str, trajectories: Sequence[Sequence[ParticleConfig]]
    ) -> Path:
        rows = [
            dict(zip(TRAJECTORY_HEADER, (traj_id, step, i, x)))
            for traj_id, trajectory in enumerate(trajectories)
            for step, config in enumerate(trajectory)
            for i, x in enumerate(config.points)
        ]
        return self._write_rows(name, TRAJECTORY_HEADER, rows)

    def save_lattice_paths(
        self, name: str, trajectories: Sequence[Sequence[ParticleConfig]]
    ) -> Path:
        """Segments (level, x_i) -> (next level, next x_i) of the p paths."""
        rows = [
            dict(
                zip(
                    LATTICE_PATH_HEADER,
                    (traj_id, i, a.level, x, b.level, y),
                )
            )
            for traj_id, trajectory in enumerate(trajectories)
            for a, b in zip(trajectory, trajectory[1:])
            for i, (x, y) in enumerate(zip(a.points, b.points))
        ]
        return self._write_rows(name, LATTICE_PATH_HEADER, rows)

    def _write_rows(self, name: str, header: list[str], rows: list[dict]) -> Path:
        path = self.dir.joinpath(f"{name}.csv")
        with path.open("w", newline="") as f:
            writer = csv.DictWriter(f, fieldnames=header)
            writer.writeheader()
            writer.writerows(rows)
        return path
