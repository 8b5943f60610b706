"""Convergence of the rescaled level-N measure to the limit density."""

from dataclasses import dataclass, field
from fractions import Fraction

from gt_flow.config import ExperimentParams, ModelParams
from gt_flow.ensembles import LimitEnsemble, discrete_to_continuum_check
from gt_flow.errors import ConfigError
from gt_flow.harness.base import Experiment
from gt_flow.harness.factory import register
from gt_flow.interface import ArithmeticMode, ExperimentKind


@dataclass
class ConvergeDensityParams(ExperimentParams):
    """
    Density convergence ladder parameters

    Parameters:
        ladder: Increasing levels N.
        points: Interior chamber points, p increasing coordinates each.
        margin: Distance of every coordinate to the boundary of (0, 1).
    """

    ladder: list[int] = field(default_factory=lambda: [50, 100, 200, 400])
    points: list[list[float]] = field(default_factory=lambda: [[0.3, 0.6], [0.2, 0.8]])
    margin: float = 0.05


def is_uniform(params: ModelParams) -> bool:
    """p = 1, z' = 1, w' = 0, where P_N is uniform on {0, ..., N}."""
    return params.p == 1 and params.z_prime == 1 and params.w_prime == 0


@register
class ConvergeDensity(Experiment):
    kind = ExperimentKind.CONVERGE_DENSITY
    params_class = ConvergeDensityParams
    default_model = ModelParams(p=2, z_prime=3, w_prime=1, mode=ArithmeticMode.FLOAT)

    def check_preconditions(self) -> None:
        experiment, p = self.experiment, self.params.p
        if self.params.exact:
            raise ConfigError("converge-density runs in float mode only")
        ladder = list(experiment.ladder)
        if not ladder or ladder[0] < 1 or any(a >= b for a, b in zip(ladder, ladder[1:])):
            raise ConfigError(f"The N ladder must be positive and increasing, got {ladder}")
        if not experiment.points:
            raise ConfigError("converge-density needs at least one point")
        low, high = experiment.margin, 1 - experiment.margin
        for X in experiment.points:
            if len(X) != p or any(a >= b for a, b in zip(X, X[1:])):
                raise ConfigError(f"Point {X} is not an increasing {p}-tuple")
            if X[0] < low or X[-1] > high:
                raise ConfigError(f"Point {X} leaves the interior [{low}, {high}]")

    def run(self) -> None:
        ensemble = LimitEnsemble(self.params)
        errors = []
        for N in self.experiment.ladder:
            error = 0.0
            for X in self.experiment.points:
                scaled, limit = discrete_to_continuum_check(self.params, N, X, ensemble)
                error = max(error, abs(float(scaled) - limit))
                self.add_row(
                    "density_ladder",
                    {"N": N, "point": list(X), "scaled": float(scaled), "rho": limit},
                )
            errors.append(error)
            self.ladder_step("density_error", N, error)
        self.record.summary["density_error"] = dict(zip(map(str, self.experiment.ladder), errors))
        self.decreasing("density ladder", "rescaled P_N tends to rho", errors)

        if is_uniform(self.params):
            self.check_uniform()

    def check_uniform(self) -> None:
        exact = self.params.with_mode(ArithmeticMode.EXACT)
        for N in self.experiment.ladder:
            for X in self.experiment.points:
                scaled, _ = discrete_to_continuum_check(exact, N, X)
                self.exact(
                    f"uniform ratio N={N} x={X[0]}",
                    "uniform stationary law",
                    scaled,
                    Fraction(N, N + 1),
                )
