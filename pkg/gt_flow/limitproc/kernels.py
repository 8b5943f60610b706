"""Transition kernel of the limit process and its space-time correlation kernel.

J^t(x, y) = sum_i exp(-t K(i)) j^i(x) j^i(y). The series is truncated at the
first index whose term bound exp(-t K(i)) M_i^2 falls below
tol * (|partial sum| + tol), where M_i bounds |j^i| on a probe grid of
[0.02, 0.98] and on the evaluation points.
"""

from dataclasses import dataclass
import math
from typing import Sequence

from absl import logging
import numpy as np

from gt_flow.config import ModelParams
from gt_flow.ensembles import LimitEnsemble, density_rho
from gt_flow.errors import DomainError, TruncationError
from gt_flow.gt_core import vandermonde
from gt_flow.limitproc.schedule import EigenSchedule, total_K
from gt_flow.orthopoly.jacobi import j_functions, orthonormal_jacobi
from gt_flow.types import NDArray

MARGIN = 0.02
MAX_TERMS = 2000
PROBE_GRID = np.linspace(MARGIN, 1 - MARGIN, 97)


@dataclass(frozen=True)
class HeatKernelEval:
    t: float
    truncation: int
    values: NDArray
    tail_bound: float


def _check_points(xs: NDArray, warn: bool = True) -> None:
    if np.any(xs <= 0) or np.any(xs >= 1):
        raise DomainError("Kernel points must lie in the open interval (0, 1)")
    if warn and (np.any(xs < MARGIN) or np.any(xs > 1 - MARGIN)):
        logging.warning(
            f"Kernel points outside [{MARGIN}, {1 - MARGIN}]; widening the truncation bound"
        )


def _decays(params: ModelParams, t: float, n: int) -> NDArray:
    return np.exp(-t * np.asarray(EigenSchedule(params.as_float()).float_values(n)))


def _basis(params: ModelParams, max_degree: int, xs: NDArray, reduced: bool) -> NDArray:
    if reduced:
        alpha, beta = float(params.z_prime) - params.p, float(params.w_prime)
        return orthonormal_jacobi(alpha, beta, max_degree, xs)
    return j_functions(params, max_degree, xs)


def choose_truncation(
    params: ModelParams,
    t: float,
    xs: NDArray,
    ys: NDArray,
    tol: float,
    start: int = 0,
    reduced: bool = False,
) -> tuple[int, float]:
    """Number of terms L (counting from ``start``) and the measured tail bound.

    Raises:
        DomainError: If t <= 0.
        TruncationError: If no L <= 2000 meets the tolerance.
    """
    if not t > 0:
        raise DomainError(f"Time gap must be positive, got {t}")
    probe = np.concatenate([PROBE_GRID, np.ravel(xs), np.ravel(ys)])
    degree = 64
    while True:
        degree = min(degree, MAX_TERMS)
        bound = np.max(np.abs(_basis(params, degree - 1, probe, reduced)), axis=1) ** 2
        terms = _decays(params, t, degree) * bound
        partial = np.cumsum(terms[start:])
        for i in range(start + 1, degree):
            if terms[i] < tol * (partial[i - 1 - start] + tol):
                return i, float(np.sum(terms[i:]))
        if degree == MAX_TERMS:
            raise TruncationError(
                f"Kernel series at t={t} did not reach tol={tol} within {MAX_TERMS} terms"
            )
        degree *= 2


def kernel_series(
    params: ModelParams,
    t: float,
    xs,
    ys,
    truncation: int,
    start: int = 0,
    reduced: bool = False,
) -> NDArray:
    """sum_{start <= i < truncation} exp(-t K(i)) f_i(x_a) f_i(y_b).

    f_i is j^i, or the orthonormal Jacobi polynomial when reduced=True.
    """
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    ys = np.atleast_1d(np.asarray(ys, dtype=float))
    fx = _basis(params, truncation - 1, xs, reduced)
    fy = _basis(params, truncation - 1, ys, reduced)
    decay = _decays(params, t, truncation)
    decay[:start] = 0.0
    return (fx.T * decay) @ fy


def _series(params: ModelParams, t: float, xs, ys, tol: float, start: int, reduced: bool):
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    ys = np.atleast_1d(np.asarray(ys, dtype=float))
    _check_points(np.concatenate([xs, ys]), warn=not reduced)
    L, tail = choose_truncation(params, t, xs, ys, tol, start, reduced)
    return HeatKernelEval(float(t), L, kernel_series(params, t, xs, ys, L, start, reduced), tail)


def heat_kernel_matrix(
    params: ModelParams, t: float, xs, ys, tol: float = 1e-12, reduced: bool = False
) -> HeatKernelEval:
    """J^t(x_a, y_b) for all pairs.

    With reduced=True the orthonormal polynomials replace j^i, which divides
    the values by sqrt(w(x) w(y)).
    """
    return _series(params, t, xs, ys, tol, 0, reduced)


def heat_kernel(params: ModelParams, t: float, x: float, y: float, tol: float = 1e-12) -> float:
    return float(heat_kernel_matrix(params, t, [x], [y], tol).values[0, 0])


def _sqrt_weight_ratio(params: ModelParams, X: NDArray, Y: NDArray) -> float:
    alpha, beta = float(params.z_prime) - params.p, float(params.w_prime)
    log_w = lambda v: np.sum(alpha * np.log1p(-v) + beta * np.log(v))
    return math.exp(0.5 * (log_w(Y) - log_w(X)))


def chamber_point(X: Sequence[float], p: int) -> NDArray:
    X = np.asarray(X, dtype=float)
    if X.shape != (p,):
        raise DomainError(f"Expected {p} coordinates, got {X.shape}")
    return X


def transition_density(
    params: ModelParams, t: float, X: Sequence[float], Y: Sequence[float], tol: float = 1e-12
) -> float:
    """P^t(Y | X) = sqrt(rho(Y) / rho(X)) exp(t K) det[J^t(x_i, y_j)].

    Zero unless Y is strictly increasing.

    Raises:
        DomainError: If rho(X) = 0.
    """
    p = params.p
    X, Y = chamber_point(X, p), chamber_point(Y, p)
    if np.any(np.diff(X) <= 0):
        raise DomainError(f"Density of the starting point {tuple(X)} vanishes")
    if np.any(np.diff(Y) <= 0):
        return 0.0
    kernel = heat_kernel_matrix(params, t, X, Y, tol).values
    ratio = float(vandermonde(list(Y))) / float(vandermonde(list(X)))
    return (
        ratio
        * _sqrt_weight_ratio(params, X, Y)
        * math.exp(t * float(total_K(params)))
        * float(np.linalg.det(kernel))
    )


def multi_time_density(
    params: ModelParams,
    times: Sequence[float],
    configs: Sequence[Sequence[float]],
    tol: float = 1e-12,
    ensemble=None,
) -> float:
    """Joint density of (X^1, ..., X^n) at increasing times.

    sqrt(rho(X^1)) prod_j exp(dt_j K) det[J^{dt_j}(X^j, X^{j+1})] sqrt(rho(X^n))

    Raises:
        DomainError: If the times are not strictly increasing or the counts differ.
    """
    if len(times) != len(configs) or not times:
        raise DomainError("Times and configurations must be non-empty and of equal length")
    if any(a >= b for a, b in zip(times, times[1:])):
        raise DomainError(f"Times {tuple(times)} are not strictly increasing")
    ensemble = ensemble or LimitEnsemble(params)
    first = density_rho(ensemble, configs[0])
    if len(configs) == 1:
        return first
    K = float(total_K(params))
    value = math.sqrt(first) * math.sqrt(density_rho(ensemble, configs[-1]))
    for (s, t), (X, Y) in zip(zip(times, times[1:]), zip(configs, configs[1:])):
        gap = t - s
        kernel = heat_kernel_matrix(params, gap, X, Y, tol).values
        value *= math.exp(gap * K) * float(np.linalg.det(kernel))
    return value


def one_point_density(params: ModelParams, xs) -> NDArray:
    """sum_{i<p} j^i(x)^2."""
    values = j_functions(params, params.p - 1, xs)
    return np.sum(values**2, axis=0)


def extended_kernel_block(
    params: ModelParams, xs, t: float, ys, s: float, tol: float = 1e-12
) -> NDArray:
    """[Ker(x_a, t; y_b, s)] for one pair of times.

    For t >= s the finite sum over i < p of exp((t-s) K(i)) j^i(x) j^i(y);
    for t < s minus the tail over i >= p, truncated with a measured bound.

    Raises:
        TruncationError: If the tail does not converge within the term cap.
    """
    p = params.p
    if t >= s:
        xs = np.atleast_1d(np.asarray(xs, dtype=float))
        ys = np.atleast_1d(np.asarray(ys, dtype=float))
        fx = j_functions(params, p - 1, xs)
        fy = j_functions(params, p - 1, ys)
        growth = np.exp((t - s) * np.asarray(EigenSchedule(params.as_float()).float_values(p)))
        return (fx.T * growth) @ fy
    return -_series(params, s - t, xs, ys, tol, p, reduced=False).values


def extended_kernel(
    params: ModelParams, x: float, t: float, y: float, s: float, tol: float = 1e-12
) -> float:
    """Ker(x, t; y, s)."""
    return float(extended_kernel_block(params, [x], t, [y], s, tol)[0, 0])


def extended_kernel_matrix(
    params: ModelParams, points: Sequence[tuple[float, float]], tol: float = 1e-12
) -> NDArray:
    """[Ker(x_a, t_a; x_b, t_b)] over space-time points (x, t)."""
    n = len(points)
    matrix = np.empty((n, n))
    for a, (x, t) in enumerate(points):
        for b, (y, s) in enumerate(points):
            matrix[a, b] = extended_kernel(params, x, t, y, s, tol)
    return matrix


def correlation_fn(
    params: ModelParams, points: Sequence[tuple[float, float]], tol: float = 1e-12
) -> float:
    """rho_n at distinct space-time points, det of the extended kernel."""
    if len(set(points)) != len(points):
        raise DomainError("Correlation points must be distinct")
    return float(np.linalg.det(extended_kernel_matrix(params, points, tol)))
