"""Monte Carlo check of the one- and two-time correlation functions.

Stationary up-down chains are simulated at level N. Each trajectory starts
from a draw of P_N and runs floor(gap N^2) steps. Lattice sites x are
binned by x / (N+p-1) on [margin, 1 - margin] and bin counts are compared
with Riemann sums of the predicted densities over the same sites, using
Wilson score intervals.
"""

from dataclasses import dataclass, field
import math

from absl import logging
import jax
import numpy as np
from scipy import stats

from gt_flow.chains.sampling import advance_batch, stationary_batch, trajectory_keys
from gt_flow.config import ExperimentParams, ModelParams
from gt_flow.errors import ConfigError
from gt_flow.harness.base import Experiment
from gt_flow.harness.factory import register
from gt_flow.harness.parallel import DEFAULT_CHUNK_SIZE, chunked_map, ordered_sum
from gt_flow.interface import ArithmeticMode, ExperimentKind
from gt_flow.limitproc.kernels import extended_kernel_block, one_point_density
from gt_flow.orthopoly.hahn import f_matrix
from gt_flow.types import NDArray

MIN_SAMPLES = 10**4


@dataclass
class MCCorrelationsParams(ExperimentParams):
    """
    Monte Carlo correlation parameters

    Parameters:
        N: Level of the simulated chains.
        n_samples: Number of independent stationary trajectories.
        gap: Time gap t of the two-time statistics, floor(t N^2) steps.
        n_bins: Number of one-point bins.
        pair_bins: Bins of the first and of the second time in the
            two-time statistics.
        margin: Bins cover [margin, 1 - margin].
        chunk_size: Trajectories per work item.
    """

    N: int = 100
    n_samples: int = 100_000
    gap: float = 0.3
    n_bins: int = 40
    pair_bins: list[int] = field(default_factory=lambda: [4, 5])
    margin: float = 0.05
    chunk_size: int = DEFAULT_CHUNK_SIZE


def site_bins(M: int, n_bins: int, margin: float) -> NDArray:
    """Bin index of every site 0, ..., M, or -1 outside [margin, 1 - margin)."""
    u = np.arange(M + 1) / M
    bins = np.floor((u - margin) / (1 - 2 * margin) * n_bins).astype(int)
    inside = (u >= margin) & (u < 1 - margin) & (bins < n_bins)
    return np.where(inside, bins, -1)


def wilson_interval(count: int, trials: int, sigma: float) -> tuple[float, float]:
    """Wilson score interval at the confidence level of +-sigma normal bands."""
    confidence = 1 - 2 * stats.norm.sf(sigma)
    interval = stats.binomtest(int(count), int(trials)).proportion_ci(
        confidence_level=confidence, method="wilson"
    )
    return float(interval.low), float(interval.high)


def bin_sums(values: NDArray, bins: NDArray, n_bins: int) -> NDArray:
    """Sum of values over the sites of every bin."""
    inside = bins >= 0
    return np.bincount(bins[inside], weights=values[inside], minlength=n_bins)


@register
class MCCorrelations(Experiment):
    kind = ExperimentKind.MC_CORRELATIONS
    params_class = MCCorrelationsParams
    default_model = ModelParams(p=2, z_prime=3, w_prime=1, mode=ArithmeticMode.FLOAT)

    def check_preconditions(self) -> None:
        experiment = self.experiment
        if self.seed is None:
            raise ConfigError("mc-correlations needs a seed")
        if experiment.n_samples < MIN_SAMPLES:
            raise ConfigError(f"mc-correlations needs at least {MIN_SAMPLES} samples")
        if experiment.N < 1 or experiment.gap <= 0:
            raise ConfigError("mc-correlations needs N >= 1 and a positive gap")
        if experiment.n_bins < 1 or len(experiment.pair_bins) != 2 or min(experiment.pair_bins) < 1:
            raise ConfigError(f"Invalid bins {experiment.n_bins}, {experiment.pair_bins}")
        if not 0 < experiment.margin < 0.5:
            raise ConfigError(f"Margin must lie in (0, 0.5), got {experiment.margin}")
        if experiment.chunk_size < 1:
            raise ConfigError("chunk_size must be positive")

    @property
    def M(self) -> int:
        return self.experiment.N + self.params.p - 1

    @property
    def steps(self) -> int:
        return math.floor(self.experiment.gap * self.experiment.N**2)

    def run(self) -> None:
        experiment = self.experiment
        logging.info(
            f"Simulating {experiment.n_samples} chains at N={experiment.N} "
            f"for {self.steps} steps with {self.jobs} workers"
        )
        parts = chunked_map(
            self.simulate_chunk, experiment.n_samples, self.jobs, experiment.chunk_size
        )
        one_point = ordered_sum([part[0] for part in parts])
        two_time = ordered_sum([part[1] for part in parts])
        self.check_one_point(one_point)
        self.check_two_time(two_time)

    def simulate_chunk(self, indices: range) -> tuple[NDArray, NDArray]:
        """One-point counts at time 0 and two-time pair counts of a chunk."""
        experiment, N = self.experiment, self.experiment.N
        keys = trajectory_keys(self.seed, np.arange(indices.start, indices.stop))
        pairs = jax.vmap(jax.random.split)(keys)
        start = stationary_batch(self.params, N, pairs[:, 0])
        end = advance_batch(self.params, N, pairs[:, 1], start, self.steps)
        start, end = np.asarray(start), np.asarray(end)

        bins = site_bins(self.M, experiment.n_bins, experiment.margin)[start].ravel()
        one_point = np.bincount(bins[bins >= 0], minlength=experiment.n_bins)

        n_first, n_second = experiment.pair_bins
        first = site_bins(self.M, n_first, experiment.margin)[start][:, :, None]
        second = site_bins(self.M, n_second, experiment.margin)[end][:, None, :]
        inside = (first >= 0) & (second >= 0)
        cells = np.broadcast_to(first * n_second + second, inside.shape)[inside]
        two_time = np.bincount(cells, minlength=n_first * n_second).reshape(n_first, n_second)
        return one_point, two_time

    def _coverage(self, name: str, table: str, counts, trials: int, predictions) -> float:
        sigma = self.tolerances.sigma
        covered = []
        for cell, (count, prediction) in enumerate(zip(np.ravel(counts), np.ravel(predictions))):
            low, high = wilson_interval(count, trials, sigma)
            covered.append(low <= prediction <= high)
            self.add_row(
                table,
                {
                    "cell": cell,
                    "count": int(count),
                    "trials": trials,
                    "empirical": count / trials,
                    "prediction": float(prediction),
                    "low": low,
                    "high": high,
                    "covered": bool(covered[-1]),
                },
            )
        coverage = float(np.mean(covered))
        self.record.summary[f"coverage/{name}"] = coverage
        logging.info(f"{name}: {sum(covered)} of {len(covered)} cells covered")
        return coverage

    def check_one_point(self, counts: NDArray) -> None:
        params, p, M = self.params.as_float(), self.params.p, self.M
        n_bins, margin = self.experiment.n_bins, self.experiment.margin
        trials = self.experiment.n_samples * p
        bins = site_bins(M, n_bins, margin)
        sites = np.arange(M + 1)
        inside = bins >= 0

        rho = np.zeros(M + 1)
        rho[inside] = one_point_density(params, sites[inside] / M)
        limit = bin_sums(rho / M, bins, n_bins) / p
        coverage = self._coverage("one_point_limit", "one_point_limit", counts, trials, limit)
        self.at_least(
            "one-point coverage",
            "correlation kernel at equal times",
            coverage,
            self.tolerances.coverage,
        )

        F = f_matrix(params, self.experiment.N)
        finite = bin_sums(np.sum(F[:p] ** 2, axis=0), bins, n_bins) / p
        coverage = self._coverage("one_point_finite", "one_point_finite", counts, trials, finite)
        self.at_least(
            "finite-N one-point coverage",
            "Christoffel-Darboux kernel of the Hahn functions",
            coverage,
            self.tolerances.coverage,
        )

    def predict_two_time(self) -> NDArray:
        """Riemann sums of rho_2((x, 0), (y, t)) / p^2 over the pair cells."""
        params, p, M = self.params.as_float(), self.params.p, self.M
        n_first, n_second = self.experiment.pair_bins
        margin, t = self.experiment.margin, float(self.experiment.gap)
        first = site_bins(M, n_first, margin)
        second = site_bins(M, n_second, margin)
        sites = np.flatnonzero((first >= 0) | (second >= 0))
        u = sites / M

        tol = self.tolerances.truncation
        forward = extended_kernel_block(params, u, 0.0, u, t, tol)
        backward = extended_kernel_block(params, u, t, u, 0.0, tol)
        rho = one_point_density(params, u)
        rho2 = np.outer(rho, rho) - forward * backward.T

        prediction = np.zeros((n_first, n_second))
        for a, x_bin in enumerate(first[sites]):
            for b, y_bin in enumerate(second[sites]):
                if x_bin >= 0 and y_bin >= 0:
                    prediction[x_bin, y_bin] += rho2[a, b]
        return prediction / (M**2 * p**2)

    def check_two_time(self, counts: NDArray) -> None:
        trials = self.experiment.n_samples * self.params.p**2
        coverage = self._coverage("two_time", "two_time", counts, trials, self.predict_two_time())
        self.at_least(
            "two-time coverage", "extended kernel determinant", coverage, self.tolerances.coverage
        )
