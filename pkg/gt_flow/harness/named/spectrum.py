"""Spectral suite of the limit process.

Quadrature checks of the semigroup (eigenfunctions, mass, stationarity,
normalization, the one-particle heat semigroup) and exact polynomial checks
of the generator and of the Doob h-transform identities.
"""

from dataclasses import dataclass, field
from fractions import Fraction
import math

from absl import logging
import jax
import numpy as np

from gt_flow.config import ExperimentParams, ModelParams
from gt_flow.ensembles import LimitEnsemble
from gt_flow.errors import ConfigError
from gt_flow.harness.base import Experiment
from gt_flow.harness.factory import register
from gt_flow.interface import ArithmeticMode, ExperimentKind
from gt_flow.limitproc.generator import (
    doob_identities_check,
    doob_residual_polynomials,
    generator_apply,
    generator_eigen_residual,
    generator_forms_agree,
    jacobi_operator_residual,
    multidim_jacobi_poly,
    rational,
    to_scalar,
    variables,
)
from gt_flow.limitproc.integrals import (
    heat_semigroup_check,
    integrate_transition,
    normalization_value,
    one_point_mass,
    semigroup_apply_check,
    stationarity_value,
)
from gt_flow.limitproc.schedule import c_factor, c_tilde, partitions_up_to
from gt_flow.types import NDArray

MAX_P = 3


@dataclass
class SpectrumParams(ExperimentParams):
    """
    Spectral suite parameters

    Parameters:
        times: Times t of the semigroup checks.
        partition_size: Largest |lambda| of the eigenfunction checks.
        n_points: Number of random interior starting points.
        n_stationarity: Number of points of the stationarity check.
        margin: Random points are drawn in [margin, 1 - margin].
        generator_degree: Largest monomial degree on which both generator
            forms are compared.
        eigen_max: Largest degree of the one-variable Jacobi operator check.
        spectral_gap_size: Largest |lambda| of the spectral gap check.
        doob_triples: Parameters (a, b, c) of the second-order operators
            annihilating the Vandermonde.
        heat_pairs: Points (x, y) of the one-particle semigroup check.
    """

    times: list[float] = field(default_factory=lambda: [0.1, 1.0])
    partition_size: int = 3
    n_points: int = 20
    n_stationarity: int = 3
    margin: float = 0.05
    generator_degree: int = 4
    eigen_max: int = 6
    spectral_gap_size: int = 6
    doob_triples: list[list[int]] = field(default_factory=lambda: [[0, 0, 0], [1, -1, 2]])
    heat_pairs: list[list[float]] = field(default_factory=lambda: [[0.3, 0.7], [0.5, 0.5]])


def rational_points(p: int) -> list[tuple[Fraction, ...]]:
    """Two interior chamber points with small denominators."""
    return [
        tuple(Fraction(i + 1, p + 1) for i in range(p)),
        tuple(Fraction(2 * i + 1, 2 * p + 1) for i in range(p)),
    ]


@register
class Spectrum(Experiment):
    kind = ExperimentKind.SPECTRUM
    params_class = SpectrumParams
    default_model = ModelParams(p=2, z_prime=3, w_prime=1, mode=ArithmeticMode.FLOAT)

    def check_preconditions(self) -> None:
        experiment = self.experiment
        if self.params.p > MAX_P:
            raise ConfigError(f"spectrum needs p <= {MAX_P}")
        if not experiment.times or min(experiment.times) <= 0:
            raise ConfigError(f"Times must be positive, got {experiment.times}")
        if experiment.n_points < 1 or experiment.partition_size < 0:
            raise ConfigError("spectrum needs n_points >= 1 and partition_size >= 0")
        if not 0 < experiment.margin < 0.5:
            raise ConfigError(f"Margin must lie in (0, 0.5), got {experiment.margin}")
        for abc in experiment.doob_triples:
            if len(abc) != 3:
                raise ConfigError(f"Doob triple {abc} must have three entries")

    def random_points(self) -> NDArray:
        """Sorted interior points, drawn from key(seed)."""
        margin = self.experiment.margin
        key = jax.random.key(self.seed or 0)
        points = jax.random.uniform(
            key,
            (self.experiment.n_points, self.params.p),
            minval=margin,
            maxval=1 - margin,
            dtype=jax.numpy.float64,
        )
        return np.sort(np.asarray(points), axis=1)

    def run(self) -> None:
        points = self.random_points()
        self.check_semigroup(points)
        self.check_kernel_integrals(points)
        self.check_generator()
        self.check_doob(points)
        self.check_eigenvalues()

    def check_semigroup(self, points: NDArray) -> None:
        params, tol = self.params, self.tolerances
        partitions = partitions_up_to(self.experiment.partition_size, params.p)
        for t in self.experiment.times:
            for partition in partitions:
                error = 0.0
                for X in points:
                    quadrature, closed = semigroup_apply_check(
                        params, partition, t, X, tol.truncation
                    )
                    error = max(error, abs(quadrature - closed) / max(1.0, abs(closed)))
                self.add_row(
                    "semigroup",
                    {"t": t, "partition": list(partition.parts), "max_relative_error": error},
                )
                self.within(
                    f"semigroup eigenfunction t={t} lambda={partition.parts}",
                    "Jacobi polynomials are eigenfunctions of the semigroup",
                    error,
                    0.0,
                    tol.quadrature,
                )

    def check_kernel_integrals(self, points: NDArray) -> None:
        params, tol = self.params, self.tolerances
        ensemble = LimitEnsemble(params)
        for t in self.experiment.times:
            mass = max(abs(integrate_transition(params, t, X, tol.truncation) - 1) for X in points)
            self.within(
                f"transition mass t={t}",
                "transition density integrates to one",
                mass,
                0.0,
                tol.quadrature,
            )
            for Y in points[: self.experiment.n_stationarity]:
                value, rho = stationarity_value(params, t, Y, tol.truncation, ensemble)
                self.within(
                    f"stationarity t={t} Y={tuple(np.round(Y, 4))}",
                    "rho is stationary",
                    value,
                    rho,
                    tol.quadrature,
                    relative=True,
                )
            for x, y in self.experiment.heat_pairs:
                composed, direct = heat_semigroup_check(params, t, t, x, y, tol.truncation)
                self.within(
                    f"heat semigroup t={t} x={x} y={y}",
                    "J^t J^s = J^(t+s)",
                    composed,
                    direct,
                    tol.quadrature,
                    relative=True,
                )
        self.within(
            "normalization of rho",
            "rho is a probability density",
            normalization_value(ensemble),
            1.0,
            tol.quadrature,
        )
        self.within(
            "one-point mass",
            "trace of the correlation kernel",
            one_point_mass(params),
            params.p,
            tol.quadrature,
        )

    def check_generator(self) -> None:
        params, p = self.params, self.params.p
        for i in range(self.experiment.eigen_max + 1):
            self.exact(
                f"Jacobi operator i={i}",
                "Jacobi polynomials diagonalize the one-particle operator",
                jacobi_operator_residual(params, i),
                0,
            )
        failures = generator_forms_agree(params, self.experiment.generator_degree)
        self.exact(
            "generator forms agree",
            "h-transform and drift forms of the generator",
            len(failures),
            0,
        )

        xs = variables(p)
        for partition in partitions_up_to(self.experiment.partition_size, p):
            self.exact(
                f"generator eigenfunction lambda={partition.parts}",
                "Jacobi polynomials are eigenfunctions of the generator",
                generator_eigen_residual(params, partition),
                0,
            )
            jac = multidim_jacobi_poly(params, partition)
            eigenvalue = rational(c_tilde(params, partition))
            for X in rational_points(p):
                reference = eigenvalue * jac.subs(dict(zip(xs, map(rational, X))))
                self.within(
                    f"generator applied lambda={partition.parts} X={tuple(map(str, X))}",
                    "Jacobi polynomials are eigenfunctions of the generator",
                    generator_apply(params, jac, X),
                    to_scalar(reference, params.exact),
                    self.tolerances.doob,
                    relative=True,
                )

    def check_doob(self, points: NDArray) -> None:
        triples = [tuple(abc) for abc in self.experiment.doob_triples]
        eigen, lemma = doob_residual_polynomials(self.params, triples)
        self.exact("Vandermonde eigenfunction", "D V = -K V", eigen, 0)
        self.exact("Vandermonde annihilated", "second-order operators annihilating V", lemma, 0)
        worst = 0.0
        for X in points:
            eigen_at, lemma_at = doob_identities_check(self.params, X, triples)
            worst = max(worst, float(eigen_at), float(lemma_at))
        self.within("Doob identities at points", "D V = -K V", worst, 0.0, self.tolerances.doob)

    def check_eigenvalues(self) -> None:
        params = self.params
        gap = math.inf
        for partition in partitions_up_to(self.experiment.spectral_gap_size, params.p):
            value = c_tilde(params, partition)
            self.add_row(
                "c_tilde",
                {
                    "partition": list(partition.parts),
                    "c_tilde": value,
                    "log_c_at_1": math.log(c_factor(params, partition, 1.0)),
                },
            )
            if partition.size > 0:
                gap = min(gap, -float(value))
        self.record.summary["spectral_gap"] = gap
        logging.info(f"Spectral gap: {gap}")
        self.exact("spectral gap", "c_tilde(lambda) < 0 for lambda != 0", gap > 0, True)

        error = max(
            abs(row["log_c_at_1"] - float(row["c_tilde"])) / max(1.0, abs(float(row["c_tilde"])))
            for row in self.record.tables["c_tilde"]
        )
        self.within(
            "log consistency of c",
            "c(lambda, t) = exp(t c_tilde(lambda))",
            error,
            0.0,
            self.tolerances.spectral,
        )
