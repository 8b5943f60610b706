"""Exact identity suite at small N.

Every identity is checked exhaustively in rational arithmetic and must hold
with zero error. Identities that involve a square root of a rational are
either checked in squared form or through an exact square root.
"""

from dataclasses import dataclass
from fractions import Fraction
import itertools

from absl import logging
import numpy as np

from gt_flow.chains.kernels import (
    down_transition_determinantal,
    transition_matrix,
    up_transition_determinantal,
    up_transition_determinantal_squared,
    updown_k_step_kernel,
    updown_step_kernel,
)
from gt_flow.chains.transitions import (
    cotransition,
    down_transition,
    row_sum,
    up_transition,
    up_transition_generic,
    updown_composition,
)
from gt_flow.config import ExperimentParams, ModelParams
from gt_flow.ensembles import (
    DiscreteEnsemble,
    GeneralZWMeasure,
    normalization_Z,
    normalization_by_enumeration,
    prob_MN_general,
    prob_PN,
    pushforward_mismatches,
)
from gt_flow.errors import ConfigError
from gt_flow.gt_core import (
    configs_in_box,
    count_paths_bruteforce,
    dim,
    dim_via_particles,
    from_particles,
    predecessors,
    signatures_in_box,
    to_particles,
    to_particles_by_columns,
    vandermonde_complement_identity,
)
from gt_flow.harness.base import Experiment
from gt_flow.harness.factory import register
from gt_flow.interface import ArithmeticMode, ExperimentKind
from gt_flow.orthopoly.hahn import (
    HahnBasis,
    hahn_dual_orthogonality_check,
    hahn_dual_orthogonality_rhs,
    hahn_inner_product,
    hahn_M_recurrence_check,
    hahn_norm,
)

MAX_N = 8
MAX_P = 3


@dataclass
class VerifyParams(ExperimentParams):
    """
    Exact identity suite parameters

    Parameters:
        n_max: Largest level N of the exhaustive checks.
        k_max: Largest step count of the Chapman-Kolmogorov checks.
        paths_n_max: Largest level of the brute-force path count.
        complement_k_max: Largest k of the Vandermonde complement identity.
    """

    n_max: int = 5
    k_max: int = 2
    paths_n_max: int = 4
    complement_k_max: int = 8


def _max_error(pairs) -> Fraction:
    return max((abs(a - b) for a, b in pairs), default=Fraction(0))


@register
class Verify(Experiment):
    kind = ExperimentKind.VERIFY
    params_class = VerifyParams
    default_model = ModelParams(p=2, z_prime=3, w_prime=1, mode=ArithmeticMode.EXACT)

    def check_preconditions(self) -> None:
        if not self.params.exact:
            raise ConfigError("verify runs in exact mode only")
        if self.experiment.n_max > MAX_N or self.params.p > MAX_P:
            raise ConfigError(f"verify needs N <= {MAX_N} and p <= {MAX_P}")
        if self.experiment.n_max < 1 or self.experiment.k_max < 1:
            raise ConfigError("verify needs n_max >= 1 and k_max >= 1")

    def run(self) -> None:
        self.check_graph()
        self.check_ensembles()
        self.check_hahn()
        self.check_up_down()
        self.check_updown_kernels()

    def _identity(self, name: str, anchor: str, N: int, error: Fraction) -> None:
        self.add_row("identities", {"identity": name, "N": N, "max_error": error})
        self.exact(f"{name} N={N}", anchor, error, 0)

    def check_graph(self) -> None:
        p = self.params.p
        for N in range(1, self.experiment.paths_n_max + 1):
            mismatches = sum(
                count_paths_bruteforce(lam) != dim(lam) for lam in signatures_in_box(N, 3)
            )
            self.exact(f"path count equals Dim N={N}", "Weyl dimension formula", mismatches, 0)

        for N in range(1, self.experiment.n_max + 1):
            support = signatures_in_box(N, p)
            bijection = sum(
                from_particles(to_particles(lam, p)) != lam
                or to_particles(lam, p) != to_particles_by_columns(lam, p)
                for lam in support
            )
            self.exact(
                f"particle bijection N={N}", "particle configuration of a signature", bijection, 0
            )
            self.exact(
                f"Dim via particles N={N}",
                "Dim as a particle Vandermonde",
                sum(dim_via_particles(to_particles(lam, p)) != dim(lam) for lam in support),
                0,
            )

        failures = 0
        for k in range(self.experiment.complement_k_max + 1):
            for size in range(k + 2):
                for points in itertools.combinations(range(k + 1), size):
                    left, right = vandermonde_complement_identity(points, k)
                    failures += left != right
        self.exact("Vandermonde complement identity", "Vandermonde of a complement", failures, 0)

    def check_ensembles(self) -> None:
        params = self.params
        for N in range(self.experiment.n_max + 1):
            self.exact(
                f"normalization Z N={N}",
                "closed form of Z_N",
                normalization_Z(params, N),
                normalization_by_enumeration(params, N),
            )
            self.exact(
                f"pushforward M_N to P_N N={N}",
                "particle pushforward of M_N",
                len(pushforward_mismatches(params, N)),
                0,
            )

        for N in range(self.experiment.n_max):
            lower = GeneralZWMeasure.from_params(params, N)
            upper = GeneralZWMeasure.from_params(params, N + 1)
            support = upper.support()
            error = _max_error(
                (
                    sum(
                        (cotransition(lam, mu) * prob_MN_general(upper, mu) for mu in support),
                        Fraction(0),
                    ),
                    prob_MN_general(lower, lam),
                )
                for lam in lower.support()
            )
            self._identity("cotransition coherency", "coherent system", N, error)

    def check_hahn(self) -> None:
        params = self.params
        for N in range(self.experiment.n_max + 1):
            basis = HahnBasis.from_params(params, N)
            size = basis.M + 1
            orthogonality = _max_error(
                (hahn_inner_product(basis, k, l), hahn_norm(basis, k) if k == l else 0)
                for k in range(size)
                for l in range(k, size)
            )
            self._identity("Hahn orthogonality", "Hahn norm lemma", N, orthogonality)
            dual = _max_error(
                (
                    hahn_dual_orthogonality_check(basis, x, y),
                    hahn_dual_orthogonality_rhs(basis, x, y),
                )
                for x in range(size)
                for y in range(size)
            )
            self._identity("Hahn dual orthogonality", "Hahn dual orthogonality lemma", N, dual)
            recurrence = _max_error(
                hahn_M_recurrence_check(basis, k, x)
                for k in range(size)
                for x in range(size + 1)
            )
            self._identity("Hahn M-recurrence", "Hahn M-recurrence lemma", N, recurrence)

    def check_up_down(self) -> None:
        params, p = self.params, self.params.p
        for N in range(self.experiment.n_max):
            lower, upper = configs_in_box(N, p), configs_in_box(N + 1, p)
            self._identity(
                "up transition stochasticity",
                "product formula of the up transition",
                N,
                _max_error((row_sum(params, N, X), 1) for X in lower),
            )
            self._identity(
                "cotransition stochasticity",
                "cotransition probabilities",
                N,
                _max_error(
                    (sum((cotransition(lam, mu) for lam in predecessors(mu)), Fraction(0)), 1)
                    for mu in signatures_in_box(N + 1, p)
                ),
            )
            self._identity(
                "up transition generic definition",
                "transition from a coherent system",
                N,
                _max_error(
                    (
                        up_transition(params, N, X, Y),
                        up_transition_generic(params, N, from_particles(X), from_particles(Y)),
                    )
                    for X, Y in itertools.product(lower, upper)
                ),
            )
            self._identity(
                "up transition determinantal squared",
                "determinantal up transition",
                N,
                _max_error(
                    (
                        up_transition(params, N, X, Y) ** 2,
                        up_transition_determinantal_squared(params, N, X, Y),
                    )
                    for X, Y in itertools.product(lower, upper)
                ),
            )
            self._identity(
                "up transition determinantal",
                "determinantal up transition",
                N,
                _max_error(
                    (up_transition(params, N, X, Y), up_transition_determinantal(params, N, X, Y))
                    for X, Y in itertools.product(lower, upper)
                ),
            )
            self._identity(
                "down transition determinantal",
                "determinantal cotransition",
                N,
                _max_error(
                    (down_transition(N, X, Y), down_transition_determinantal(params, N, X, Y))
                    for X, Y in itertools.product(lower, upper)
                ),
            )
            self._identity(
                "down transition equals Dim ratio",
                "cotransition probabilities",
                N,
                _max_error(
                    (down_transition(N, X, Y), cotransition(from_particles(X), from_particles(Y)))
                    for X, Y in itertools.product(lower, upper)
                ),
            )
            P_N, P_next = DiscreteEnsemble(params, N), DiscreteEnsemble(params, N + 1)
            self._identity(
                "Bayes identity",
                "cotransition from the up transition",
                N,
                _max_error(
                    (
                        prob_PN(P_N, X) * up_transition(params, N, X, Y),
                        prob_PN(P_next, Y) * down_transition(N, X, Y),
                    )
                    for X, Y in itertools.product(lower, upper)
                ),
            )

    def check_updown_kernels(self) -> None:
        params, p = self.params, self.params.p
        for N in range(self.experiment.n_max + 1):
            configs = configs_in_box(N, p)
            step = updown_step_kernel(params, N)
            _, T = transition_matrix(params, step)
            logging.info(f"Up-down kernel N={N}: {len(configs)} configurations")

            self._identity(
                "Cauchy-Binet composition",
                "up-down transition as a composition",
                N,
                _max_error(
                    (T[a, b], updown_composition(params, N, X, Y))
                    for a, X in enumerate(configs)
                    for b, Y in enumerate(configs)
                ),
            )
            self._identity(
                "up-down stochasticity",
                "up-down transition as a composition",
                N,
                _max_error((sum(T[a], Fraction(0)), 1) for a in range(len(configs))),
            )
            P = [prob_PN(DiscreteEnsemble(params, N), X) for X in configs]
            self._identity(
                "detailed balance",
                "symmetry of u_N",
                N,
                _max_error(
                    (P[a] * T[a, b], P[b] * T[b, a])
                    for a in range(len(configs))
                    for b in range(len(configs))
                ),
            )
            self._identity(
                "stationarity",
                "stationary up-down chain",
                N,
                _max_error(
                    (sum((P[a] * T[a, b] for a in range(len(configs))), Fraction(0)), P[b])
                    for b in range(len(configs))
                ),
            )
            _, T1 = transition_matrix(params, updown_k_step_kernel(params, N, 1))
            self._identity(
                "spectral form k=1",
                "k-step spectral kernel",
                N,
                _max_error(zip(T1.ravel(), T.ravel())),
            )
            _, T0 = transition_matrix(params, updown_k_step_kernel(params, N, 0))
            identity = np.empty(T0.shape, dtype=object)
            n = len(configs)
            identity[:] = [[Fraction(int(a == b)) for b in range(n)] for a in range(n)]
            self._identity(
                "spectral form k=0",
                "k-step spectral kernel",
                N,
                _max_error(zip(T0.ravel(), identity.ravel())),
            )
            self.check_chapman_kolmogorov(N)

    def check_chapman_kolmogorov(self, N: int) -> None:
        params = self.params
        k_max = self.experiment.k_max
        matrices = {
            k: transition_matrix(params, updown_k_step_kernel(params, N, k))[1]
            for k in range(1, 2 * k_max + 1)
        }
        error = Fraction(0)
        for k in range(1, k_max + 1):
            for l in range(1, k_max + 1):
                product = matrices[k].dot(matrices[l])
                error = max(error, _max_error(zip(product.ravel(), matrices[k + l].ravel())))
        self._identity("Chapman-Kolmogorov", "k-step spectral kernel", N, error)
