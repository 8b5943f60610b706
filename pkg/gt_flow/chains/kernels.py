"""Spectral matrices of the level-N chains and the determinantal transitions.

In exact mode a matrix whose entries are square roots of rationals is kept
as a rational core and squared scales, entry(x, y) = core(x, y) sqrt(row(x)
col(y)). Minors are then exact up to one square root of a rational, and
probabilities are recovered with an exact square root.
"""

from fractions import Fraction
import math

from flax import struct
import numpy as np

from gt_flow import arithmetic
from gt_flow.chains.transitions import check_boxes
from gt_flow.config import ModelParams
from gt_flow.ensembles import DiscreteEnsemble, log_prob_PN, prob_PN, weight_wN
from gt_flow.errors import DomainError
from gt_flow.gt_core import ParticleConfig, configs_in_box
from gt_flow.orthopoly.hahn import (
    HahnBasis,
    f_matrix,
    hahn_eval,
    hahn_reduced_norm,
    hahn_reduced_weight,
)
from gt_flow.types import NDArray, Scalar

MAX_DENSE_SIZE = 2000


class KernelMatrix(struct.PyTreeNode):
    core: NDArray
    row_scale: NDArray
    col_scale: NDArray
    exact: bool = struct.field(pytree_node=False, default=False)

    @property
    def shape(self) -> tuple[int, int]:
        return self.core.shape

    def dense(self) -> NDArray:
        """Float values of every entry."""
        core = self.core.astype(float)
        scales = np.sqrt(
            np.outer(self.row_scale.astype(float), self.col_scale.astype(float))
        )
        return core * scales

    def minor_squared(self, rows, cols) -> Scalar:
        """det(entries[rows, cols])^2, exact in exact mode."""
        sub = [[self.core[r, c] for c in cols] for r in rows]
        det = arithmetic.det(sub, self.exact)
        scale = arithmetic.product(
            [self.row_scale[r] for r in rows] + [self.col_scale[c] for c in cols], self.exact
        )
        return det * det * scale

    def minor_sign(self, rows, cols) -> int:
        sub = [[self.core[r, c] for c in cols] for r in rows]
        return arithmetic.sign(arithmetic.det(sub, self.exact))

    def minor(self, rows, cols) -> float:
        return float(np.linalg.det(self.dense()[np.ix_(list(rows), list(cols))]))


def _object_array(rows) -> NDArray:
    array = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
    for i, row in enumerate(rows):
        for j, value in enumerate(row):
            array[i, j] = value
    return array


def c_squared(params: ModelParams, N: int, i: int) -> Scalar:
    """(c_i^N)^2 = (1 - i/(p+N)) (1 + i/(w'+z'+N+1))."""
    p = params.p
    if not 0 <= i <= N + p - 1:
        raise DomainError(f"Index {i} outside [0, {N + p - 1}]")
    z, w = params.z_prime, params.w_prime
    return (1 - params.scalar(i) / (p + N)) * (1 + i / (w + z + N + 1))


def c_coeff(params: ModelParams, N: int, i: int) -> float:
    return math.sqrt(c_squared(params, N, i))


def c_powers(params: ModelParams, N: int, k: int) -> NDArray:
    """(c_i^N)^{2k} for i = 0, ..., N+p-1."""
    values = [c_squared(params, N, i) ** k for i in range(N + params.p)]
    if params.exact:
        array = np.empty(len(values), dtype=object)
        array[:] = values
        return array
    return np.asarray(values, dtype=float)


class UpDownKernel(struct.PyTreeNode):
    """w_{N,k}, the k-step kernel of the up-down chain, as a KernelMatrix."""

    matrix: KernelMatrix
    c_powers: NDArray
    params: ModelParams = struct.field(pytree_node=False)
    N: int = struct.field(pytree_node=False)
    k: int = struct.field(pytree_node=False)


def matrix_vN(params: ModelParams, N: int) -> KernelMatrix:
    """Two-diagonal (N+p) x (N+p+1) matrix v_N.

    v_N(x, x) = sqrt((z'+N-x)(p+N-x) / ((p+N)(w'+z'+N+1)))
    v_N(x, x+1) = sqrt((w'+x+1)(x+1) / ((p+N)(w'+z'+N+1)))
    """
    p, z, w = params.p, params.z_prime, params.w_prime
    size = N + p
    den = (p + N) * (w + z + N + 1)
    if params.exact:
        core = [[Fraction(0)] * (size + 1) for _ in range(size)]
        for x in range(size):
            core[x][x] = z + N - x
            core[x][x + 1] = w + x + 1
        row = np.empty(size, dtype=object)
        row[:] = [weight_wN(params, N, x) / den for x in range(size)]
        col = np.empty(size + 1, dtype=object)
        col[:] = [1 / weight_wN(params, N + 1, y) for y in range(size + 1)]
        return KernelMatrix(_object_array(core), row, col, exact=True)

    x = np.arange(size, dtype=float)
    core = np.zeros((size, size + 1))
    core[np.arange(size), np.arange(size)] = np.sqrt((z + N - x) * (p + N - x) / den)
    core[np.arange(size), np.arange(1, size + 1)] = np.sqrt((w + x + 1) * (x + 1) / den)
    return KernelMatrix(core, np.ones(size), np.ones(size + 1))


def spectral_vN(params: ModelParams, N: int) -> NDArray:
    """F_N^T C_N F_{N+1} in float mode."""
    params = params.as_float()
    size = N + params.p
    C = np.zeros((size, size + 1))
    C[np.arange(size), np.arange(size)] = [c_coeff(params, N, i) for i in range(size)]
    return f_matrix(params, N).T @ C @ f_matrix(params, N + 1)


def spectral_factorization_residual(params: ModelParams, N: int) -> float:
    """max |v_N - F_N^T C_N F_{N+1}|."""
    dense = matrix_vN(params.as_float(), N).dense()
    return float(np.max(np.abs(dense - spectral_vN(params, N))))


def _c_product(params: ModelParams, N: int, k: int) -> Scalar:
    """prod_{i<p} (c_i^N)^{2k}."""
    return arithmetic.product(
        (c_squared(params, N, i) ** k for i in range(params.p)), params.exact
    )


def updown_step_kernel(params: ModelParams, N: int) -> UpDownKernel:
    """u_N = v_N v_N^T, the one-step kernel."""
    v = matrix_vN(params, N)
    size = N + params.p
    if params.exact:
        core = [
            [
                sum(
                    (v.core[x, z] * v.core[y, z] * v.col_scale[z] for z in range(size + 1)),
                    Fraction(0),
                )
                for y in range(size)
            ]
            for x in range(size)
        ]
        matrix = KernelMatrix(_object_array(core), v.row_scale, v.row_scale, exact=True)
    else:
        dense = v.dense()
        matrix = KernelMatrix(dense @ dense.T, np.ones(size), np.ones(size))
    return UpDownKernel(matrix, c_powers(params, N, 1), params, N, 1)


def updown_k_step_kernel(params: ModelParams, N: int, k: int) -> UpDownKernel:
    """w_{N,k} = F_N^T (C_N C_N^T)^k F_N through the diagonal power.

    Raises:
        DomainError: If k < 0.
    """
    if k < 0:
        raise DomainError(f"Step count must be non-negative, got {k}")
    powers = c_powers(params, N, k)
    size = N + params.p
    if params.exact:
        basis = HahnBasis.from_params(params, N)
        Q = [[hahn_eval(basis, i, x) for x in range(size)] for i in range(size)]
        coefficient = [powers[i] / hahn_reduced_norm(basis, i) for i in range(size)]
        core = [
            [sum((coefficient[i] * Q[i][x] * Q[i][y] for i in range(size)), Fraction(0))
             for y in range(size)]
            for x in range(size)
        ]
        scales = np.empty(size, dtype=object)
        scales[:] = [hahn_reduced_weight(basis, x) for x in range(size)]
        matrix = KernelMatrix(_object_array(core), scales, scales, exact=True)
    else:
        F = f_matrix(params, N)
        matrix = KernelMatrix((F.T * powers) @ F, np.ones(size), np.ones(size))
    return UpDownKernel(matrix, powers, params, N, k)


def kernel_power_residual(params: ModelParams, N: int, k: int) -> float:
    """max |u_N^k - F_N^T (C_N C_N^T)^k F_N| in float mode."""
    params = params.as_float()
    u = updown_step_kernel(params, N).matrix.dense()
    spectral = updown_k_step_kernel(params, N, k).matrix.dense()
    return float(np.max(np.abs(np.linalg.matrix_power(u, k) - spectral)))


def _check_same_box(params: ModelParams, N: int, *configs: ParticleConfig) -> None:
    for config in configs:
        if (config.level, config.p) != (N, params.p):
            raise DomainError(
                f"Configuration in box ({config.level}, {config.p}), expected ({N}, {params.p})"
            )


def kernel_transition_squared(
    params: ModelParams, kernel: UpDownKernel, X: ParticleConfig, X_next: ParticleConfig
) -> Scalar:
    """(P(X')/P(X)) det[w_{N,k}(x_i, x'_j)]^2 / prod_{i<p} (c_i^N)^{4k}."""
    N = kernel.N
    _check_same_box(params, N, X, X_next)
    ensemble = DiscreteEnsemble(params, N)
    ratio = prob_PN(ensemble, X_next) / prob_PN(ensemble, X)
    minor = kernel.matrix.minor_squared(X.points, X_next.points)
    return ratio * minor / _c_product(params, N, kernel.k) ** 2


def kernel_transition(
    params: ModelParams, kernel: UpDownKernel, X: ParticleConfig, X_next: ParticleConfig
) -> Scalar:
    """k-step up-down transition.

    sqrt(P(X')/P(X)) det[w_{N,k}(x_i, x'_j)] / prod_{i<p} (c_i^N)^{2k}.
    """
    if params.exact:
        squared = kernel_transition_squared(params, kernel, X, X_next)
        return kernel.matrix.minor_sign(X.points, X_next.points) * arithmetic.exact_sqrt(squared)
    N = kernel.N
    _check_same_box(params, N, X, X_next)
    ensemble = DiscreteEnsemble(params, N)
    log_ratio = log_prob_PN(ensemble, X_next) - log_prob_PN(ensemble, X)
    minor = kernel.matrix.minor(X.points, X_next.points)
    return math.exp(0.5 * log_ratio) * minor / _c_product(params, N, kernel.k)


def transition_matrix(
    params: ModelParams, kernel: UpDownKernel
) -> tuple[list[ParticleConfig], NDArray]:
    """Dense transition matrix over all configurations of the box.

    Raises:
        DomainError: If there are more than 2000 configurations.
    """
    configs = configs_in_box(kernel.N, params.p)
    if len(configs) > MAX_DENSE_SIZE:
        raise DomainError(f"{len(configs)} configurations exceed the dense limit")
    values = [[kernel_transition(params, kernel, X, Y) for Y in configs] for X in configs]
    return configs, (_object_array(values) if params.exact else np.asarray(values, dtype=float))


def _determinantal_squared(
    params: ModelParams, N: int, lower: ParticleConfig, upper: ParticleConfig
) -> Scalar:
    """det[v_N(x_i, x'_j)]^2 / prod_{i<p} (c_i^N)^2."""
    minor = matrix_vN(params, N).minor_squared(lower.points, upper.points)
    return minor / _c_product(params, N, 1)


def up_transition_determinantal_squared(
    params: ModelParams, N: int, X: ParticleConfig, X_next: ParticleConfig
) -> Scalar:
    check_boxes(X, X_next, N, params.p)
    ratio = prob_PN(DiscreteEnsemble(params, N + 1), X_next) / prob_PN(
        DiscreteEnsemble(params, N), X
    )
    return ratio * _determinantal_squared(params, N, X, X_next)


def up_transition_determinantal(
    params: ModelParams, N: int, X: ParticleConfig, X_next: ParticleConfig
) -> Scalar:
    """sqrt(P_{N+1}(X') / P_N(X)) det[v_N(x_i, x'_j)] / prod_{i<p} c_i^N."""
    check_boxes(X, X_next, N, params.p)
    v = matrix_vN(params, N)
    if params.exact:
        squared = up_transition_determinantal_squared(params, N, X, X_next)
        return v.minor_sign(X.points, X_next.points) * arithmetic.exact_sqrt(squared)
    log_ratio = log_prob_PN(DiscreteEnsemble(params, N + 1), X_next) - log_prob_PN(
        DiscreteEnsemble(params, N), X
    )
    c = math.prod(c_coeff(params, N, i) for i in range(params.p))
    return math.exp(0.5 * log_ratio) * v.minor(X.points, X_next.points) / c


def down_transition_determinantal_squared(
    params: ModelParams, N: int, X_prev: ParticleConfig, X: ParticleConfig
) -> Scalar:
    check_boxes(X_prev, X, N, params.p)
    ratio = prob_PN(DiscreteEnsemble(params, N), X_prev) / prob_PN(
        DiscreteEnsemble(params, N + 1), X
    )
    return ratio * _determinantal_squared(params, N, X_prev, X)


def down_transition_determinantal(
    params: ModelParams, N: int, X_prev: ParticleConfig, X: ParticleConfig
) -> Scalar:
    """sqrt(P_N(X') / P_{N+1}(X)) det[v_N(x'_i, x_j)] / prod_{i<p} c_i^N."""
    check_boxes(X_prev, X, N, params.p)
    v = matrix_vN(params, N)
    if params.exact:
        squared = down_transition_determinantal_squared(params, N, X_prev, X)
        return v.minor_sign(X_prev.points, X.points) * arithmetic.exact_sqrt(squared)
    log_ratio = log_prob_PN(DiscreteEnsemble(params, N), X_prev) - log_prob_PN(
        DiscreteEnsemble(params, N + 1), X
    )
    c = math.prod(c_coeff(params, N, i) for i in range(params.p))
    return math.exp(0.5 * log_ratio) * v.minor(X_prev.points, X.points) / c
