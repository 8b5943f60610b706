"""Convergence of the scaled up-down kernel to the limit transition kernel.

At level N the chain runs k = floor(t N^2) steps; (N+p-1) w_{N,k} at the
sites floor((N+p-1) x) is compared with J^t(x, y) on an interior grid.
"""

from dataclasses import dataclass, field
import math

import numpy as np

from gt_flow.chains.kernels import c_squared, updown_k_step_kernel
from gt_flow.config import ExperimentParams, ModelParams
from gt_flow.errors import ConfigError
from gt_flow.harness.base import Experiment
from gt_flow.harness.factory import register
from gt_flow.interface import ArithmeticMode, ExperimentKind
from gt_flow.limitproc.kernels import HeatKernelEval, heat_kernel_matrix
from gt_flow.limitproc.schedule import eigen_K
from gt_flow.orthopoly.degeneration import (
    SITE_EPS,
    hahn_jacobi_limit_error,
    hahn_norm_ratio_limit,
)
from gt_flow.types import NDArray


@dataclass
class ConvergeKernelParams(ExperimentParams):
    """
    Kernel convergence ladder parameters

    Parameters:
        ladder: Increasing levels N.
        gaps: Time gaps t - s.
        grid_min: Smallest grid coordinate.
        grid_max: Largest grid coordinate.
        n_grid: Number of grid points per axis.
        max_eigen_index: Number of eigen indices in the eigenvalue and
            degeneration ladders.
        margin: Distance of the grid to the boundary of (0, 1).
    """

    ladder: list[int] = field(default_factory=lambda: [50, 100, 200])
    gaps: list[float] = field(default_factory=lambda: [0.5])
    grid_min: float = 0.2
    grid_max: float = 0.8
    n_grid: int = 13
    max_eigen_index: int = 4
    margin: float = 0.05


def scaled_kernel(params: ModelParams, N: int, t: float, grid: NDArray) -> tuple[int, NDArray]:
    """Returns k = floor(t N^2) and (N+p-1) w_{N,k}(floor(M x_a), floor(M x_b))."""
    k = math.floor(t * N**2)
    M = N + params.p - 1
    dense = updown_k_step_kernel(params.as_float(), N, k).matrix.dense()
    sites = np.floor(M * grid + SITE_EPS).astype(int)
    return k, M * dense[np.ix_(sites, sites)]


def eigen_ratio_error(params: ModelParams, N: int, t: float, n_indices: int) -> float:
    """max_i |(c_i^N)^{2k} / exp(-t K(i)) - 1| over i < n_indices."""
    params = params.as_float()
    k = math.floor(t * N**2)
    indices = range(min(n_indices, N + params.p))
    return max(
        abs(math.exp(k * math.log(c_squared(params, N, i)) + t * eigen_K(params, i)) - 1)
        for i in indices
    )


@register
class ConvergeKernel(Experiment):
    kind = ExperimentKind.CONVERGE_KERNEL
    params_class = ConvergeKernelParams
    default_model = ModelParams(p=1, z_prime=2, w_prime=0.5, mode=ArithmeticMode.FLOAT)

    def check_preconditions(self) -> None:
        experiment = self.experiment
        if self.params.exact:
            raise ConfigError("converge-kernel runs in float mode only")
        ladder = list(experiment.ladder)
        if not ladder or ladder[0] < 1 or any(a >= b for a, b in zip(ladder, ladder[1:])):
            raise ConfigError(f"The N ladder must be positive and increasing, got {ladder}")
        if not experiment.gaps or min(experiment.gaps) <= 0:
            raise ConfigError(f"Time gaps must be positive, got {experiment.gaps}")
        if not (
            experiment.margin <= experiment.grid_min < experiment.grid_max <= 1 - experiment.margin
        ):
            raise ConfigError(
                f"Grid [{experiment.grid_min}, {experiment.grid_max}] leaves the interior "
                f"[{experiment.margin}, {1 - experiment.margin}]"
            )
        if experiment.n_grid < 2 or experiment.max_eigen_index < 1:
            raise ConfigError("converge-kernel needs n_grid >= 2 and max_eigen_index >= 1")

    @property
    def grid(self) -> NDArray:
        experiment = self.experiment
        return np.linspace(experiment.grid_min, experiment.grid_max, experiment.n_grid)

    def run(self) -> None:
        for t in self.experiment.gaps:
            self.kernel_ladder(float(t))
            self.eigen_ladder(float(t))
        self.degeneration_ladder()

    def kernel_ladder(self, t: float) -> None:
        grid, tol = self.grid, self.tolerances.truncation
        limit = heat_kernel_matrix(self.params, t, grid, grid, tol)
        errors = []
        for N in self.experiment.ladder:
            k, discrete = scaled_kernel(self.params, N, t, grid)
            error = float(np.max(np.abs(discrete - limit.values)))
            errors.append(error)
            self.ladder_step(f"kernel_sup_error/t={t}", N, error)
            self.add_row(
                "kernel_ladder",
                {"t": t, "N": N, "k": k, "sup_error": error, "truncation": limit.truncation},
            )
        self.record.summary.setdefault("kernel_sup_error", {})[f"t={t}"] = dict(
            zip(map(str, self.experiment.ladder), errors)
        )
        self.decreasing(f"kernel sup-error ladder t={t}", "scaled kernel tends to J^t", errors)
        self.dump(t, limit)

    def eigen_ladder(self, t: float) -> None:
        errors = []
        for N in self.experiment.ladder:
            error = eigen_ratio_error(self.params, N, t, self.experiment.max_eigen_index)
            errors.append(error)
            self.ladder_step(f"eigen_ratio_error/t={t}", N, error)
            self.add_row("eigen_ladder", {"t": t, "N": N, "max_error": error})
        self.decreasing(
            f"eigenvalue ratio ladder t={t}",
            "(c_i^N)^(2 floor(tN^2)) tends to exp(-t K(i))",
            errors,
        )

    def degeneration_ladder(self) -> None:
        grid, n_indices = self.grid, self.experiment.max_eigen_index
        jacobi_errors, norm_errors = [], []
        for N in self.experiment.ladder:
            indices = range(min(n_indices, N + self.params.p))
            jacobi_error = max(hahn_jacobi_limit_error(self.params, N, i, grid) for i in indices)
            norm_error = 0.0
            for i in indices:
                ratio, limit = hahn_norm_ratio_limit(self.params, N, i)
                norm_error = max(norm_error, abs(ratio / limit - 1))
            jacobi_errors.append(jacobi_error)
            norm_errors.append(norm_error)
            self.ladder_step("hahn_jacobi_error", N, jacobi_error)
            self.ladder_step("hahn_norm_ratio_error", N, norm_error)
            self.add_row(
                "degeneration_ladder",
                {"N": N, "hahn_jacobi_error": jacobi_error, "norm_ratio_error": norm_error},
            )
        self.decreasing(
            "Hahn to Jacobi ladder", "Hahn polynomials degenerate to Jacobi", jacobi_errors
        )
        self.decreasing(
            "Hahn norm ratio ladder", "Hahn norms degenerate to Jacobi", norm_errors
        )

    def dump(self, t: float, limit: HeatKernelEval) -> None:
        if self.saver is None:
            return
        block = self.params.to_dict()
        N = self.experiment.ladder[-1]
        k = math.floor(t * N**2)
        dense = updown_k_step_kernel(self.params, N, k).matrix.dense()
        self.saver.save_kernel(
            f"kernel_N{N}_t{t}",
            dense,
            {
                "N": N,
                "p": block["p"],
                "zPrime": block["zPrime"],
                "wPrime": block["wPrime"],
                "k": k,
            },
        )
        self.saver.save_grid(
            f"heat_kernel_t{t}",
            self.grid,
            self.grid,
            limit.values,
            {
                "p": block["p"],
                "zPrime": block["zPrime"],
                "wPrime": block["wPrime"],
                "t": t,
                "truncation": limit.truncation,
                "tol": self.tolerances.truncation,
            },
        )
