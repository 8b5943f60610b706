"""Sample paths of the up chain as p non-intersecting lattice paths."""

from dataclasses import dataclass

from absl import logging
import jax
import numpy as np

from gt_flow.chains.sampling import sample_up_chain, sample_updown_trajectory, trajectory_keys
from gt_flow.config import ExperimentParams, ModelParams
from gt_flow.errors import ConfigError
from gt_flow.gt_core import ParticleConfig, down_neighbours, particles_interlace, up_neighbours
from gt_flow.harness.base import Experiment
from gt_flow.harness.factory import register
from gt_flow.interface import ArithmeticMode, ExperimentKind


@dataclass
class ExportPathsParams(ExperimentParams):
    """
    Path export parameters

    Parameters:
        N_target: Last level of the up chain.
        n_paths: Number of independent samples.
        updown_steps: Steps of a stationary up-down trajectory at level
            N_target exported next to each path, 0 for none.
    """

    N_target: int = 30
    n_paths: int = 1
    updown_steps: int = 0


def one_updown_step(X: ParticleConfig, Y: ParticleConfig) -> bool:
    """Y is reachable from X by one up step followed by one down step."""
    return any(Y in down_neighbours(Z) for Z in up_neighbours(X))


@register
class ExportPaths(Experiment):
    kind = ExperimentKind.EXPORT_PATHS
    params_class = ExportPathsParams
    default_model = ModelParams(p=2, z_prime=3, w_prime=1, mode=ArithmeticMode.FLOAT)

    def check_preconditions(self) -> None:
        experiment = self.experiment
        if self.seed is None:
            raise ConfigError("export-paths needs a seed")
        if experiment.N_target < 0 or experiment.n_paths < 1 or experiment.updown_steps < 0:
            raise ConfigError(
                "export-paths needs N_target >= 0, n_paths >= 1 and updown_steps >= 0"
            )

    def run(self) -> None:
        experiment, p = self.experiment, self.params.p
        paths, trajectories = [], []
        for key in trajectory_keys(self.seed, np.arange(experiment.n_paths)):
            up_key, updown_key = jax.random.split(key)
            paths.append(sample_up_chain(self.params, experiment.N_target, up_key))
            if experiment.updown_steps:
                trajectories.append(
                    sample_updown_trajectory(
                        self.params, experiment.N_target, experiment.updown_steps, updown_key
                    )
                )
        logging.info(f"Sampled {len(paths)} paths up to level {experiment.N_target}")

        self.exact(
            "path columns",
            "collection of p non-intersecting paths",
            sorted({len(X.points) for path in paths for X in path}),
            [p],
        )
        self.exact(
            "non-crossing interlacing paths",
            "collection of p non-intersecting paths",
            sum(not particles_interlace(a, b) for path in paths for a, b in zip(path, path[1:])),
            0,
        )
        self.exact(
            "up-down moves",
            "up-down transition as a composition",
            sum(
                not one_updown_step(a, b)
                for trajectory in trajectories
                for a, b in zip(trajectory, trajectory[1:])
            ),
            0,
        )
        self.record.summary["final_positions"] = {
            str(i): list(path[-1].points) for i, path in enumerate(paths)
        }

        if self.saver is not None:
            self.saver.save_trajectories("trajectories", paths)
            self.saver.save_lattice_paths("lattice_paths", paths)
            if trajectories:
                self.saver.save_trajectories("updown_trajectories", trajectories)
