"""Quadrature identities of the limit process.

All chamber integrals are (1/p!) times tensor Gauss-Jacobi sums over the cube
with alpha = z' - p and beta = w', so the weight prod x^{w'} (1-x)^{z'-p} is
carried by the rule. The kernel then enters through its orthonormal-polynomial
form H^t(x, y) = J^t(x, y) / sqrt(w(x) w(y)), and every integrand is a
symmetric polynomial times known factors, with no division by V(Y).
"""

import math
from typing import Sequence

import numpy as np
from scipy import special

from gt_flow.config import ModelParams
from gt_flow.ensembles import LimitEnsemble, density_rho, limit_weight, vandermonde_squared
from gt_flow.errors import DomainError
from gt_flow.limitproc.kernels import (
    chamber_point,
    choose_truncation,
    heat_kernel,
    kernel_series,
)
from gt_flow.limitproc.schedule import Partition, c_factor, total_K
from gt_flow.orthopoly.jacobi import multidim_jacobi
from gt_flow.orthopoly.quadrature import QuadratureRule, chamber_integrate, gauss_jacobi_rule
from gt_flow.types import NDArray


def _rule(params: ModelParams, degree: int, order: int | None) -> QuadratureRule:
    n = order or degree + params.p + 16
    return gauss_jacobi_rule(float(params.z_prime) - params.p, float(params.w_prime), n)


def _signed_vandermonde(points: NDArray) -> NDArray:
    """prod_{i<j} (x_j - x_i) along the last axis."""
    p = points.shape[-1]
    result = np.ones(points.shape[:-1])
    for i in range(p):
        for j in range(i + 1, p):
            result = result * (points[..., j] - points[..., i])
    return result


def _kernel_dets(params: ModelParams, t: float, X: NDArray, points: NDArray, L: int) -> NDArray:
    """det[H^t(x_i, y_j)] for every row Y of points."""
    m, p = points.shape
    values = kernel_series(params, t, X, points.reshape(-1), L, reduced=True)
    blocks = values.reshape(p, m, p).transpose(1, 0, 2)
    return np.linalg.det(blocks)


def _start_point(X: Sequence[float], p: int) -> NDArray:
    X = chamber_point(X, p)
    if np.any(np.diff(X) <= 0) or X[0] <= 0 or X[-1] >= 1:
        raise DomainError(f"{tuple(X)} is not an interior point of the chamber")
    return X


def integrate_transition(
    params: ModelParams, t: float, X: Sequence[float], tol: float = 1e-12, order: int | None = None
) -> float:
    """int P^t(Y | X) dY over the chamber; equals 1."""
    p = params.p
    X = _start_point(X, p)
    L, _ = choose_truncation(params, t, X, X, tol, reduced=True)
    rule = _rule(params, L, order)

    def integrand(points):
        return _signed_vandermonde(points) * _kernel_dets(params, t, X, points, L)

    scale = math.exp(t * float(total_K(params))) / float(_signed_vandermonde(X))
    return scale * chamber_integrate(rule, p, integrand)


def stationarity_value(
    params: ModelParams,
    t: float,
    Y: Sequence[float],
    tol: float = 1e-12,
    ensemble: LimitEnsemble | None = None,
    order: int | None = None,
) -> tuple[float, float]:
    """Returns (int rho(X) P^t(Y | X) dX, rho(Y))."""
    p = params.p
    Y = _start_point(Y, p)
    ensemble = ensemble or LimitEnsemble(params)
    L, _ = choose_truncation(params, t, Y, Y, tol, reduced=True)
    rule = _rule(params, L, order)

    def integrand(points):
        # H is symmetric, so det H(X, Y) = det H(Y, X).
        return _signed_vandermonde(points) * _kernel_dets(params, t, Y, points, L)

    weight_Y = math.prod(limit_weight(params, y) for y in Y)
    scale = (
        ensemble.B
        * float(_signed_vandermonde(Y))
        * weight_Y
        * math.exp(t * float(total_K(params)))
    )
    return scale * chamber_integrate(rule, p, integrand), density_rho(ensemble, Y)


def normalization_value(ensemble: LimitEnsemble, order: int | None = None) -> float:
    """int rho over the chamber with a rule independent of the one fixing B."""
    params = ensemble.params
    n = order or ensemble.quadrature_order + 8
    rule = gauss_jacobi_rule(float(params.z_prime) - params.p, float(params.w_prime), n)
    return ensemble.B * chamber_integrate(rule, params.p, vandermonde_squared)


def one_point_mass(params: ModelParams, order: int | None = None) -> float:
    """int_0^1 sum_{i<p} j^i(x)^2 dx; equals p."""
    p = params.p
    rule = _rule(params, p, order)
    values = kernel_series(params, 0.0, rule.nodes, rule.nodes, p, reduced=True)
    return rule.integrate(np.diag(values))


def heat_semigroup_check(
    params: ModelParams,
    t: float,
    s: float,
    x: float,
    y: float,
    tol: float = 1e-12,
    order: int | None = None,
) -> tuple[float, float]:
    """Returns (int_0^1 J^t(x, u) J^s(u, y) du, J^{t+s}(x, y))."""
    xy = np.array([float(x), float(y)])
    L, _ = choose_truncation(params, min(t, s), xy, xy, tol, reduced=True)
    rule = _rule(params, L, order)
    left = kernel_series(params, t, [x], rule.nodes, L, reduced=True)[0]
    right = kernel_series(params, s, rule.nodes, [y], L, reduced=True)[:, 0]
    scale = math.sqrt(limit_weight(params, x) * limit_weight(params, y))
    return scale * rule.integrate(left * right), heat_kernel(params, t + s, x, y, tol)


def _jacobi_dets(params: ModelParams, partition: Partition, points: NDArray) -> NDArray:
    """det[Jac^{lambda_i + p - i}(y_j)] for every row Y of points."""
    p = params.p
    alpha, beta = float(params.z_prime) - p, float(params.w_prime)
    degrees = np.array([part + p - 1 - i for i, part in enumerate(partition.parts)])
    values = special.eval_jacobi(degrees[:, None, None], alpha, beta, 2 * points[None] - 1)
    return np.linalg.det(values.transpose(1, 0, 2))


def semigroup_apply_check(
    params: ModelParams,
    partition: Partition,
    t: float,
    X: Sequence[float],
    tol: float = 1e-12,
    order: int | None = None,
) -> tuple[float, float]:
    """Returns (int Jac^lambda(Y) P^t(Y | X) dY, c(lambda, t) Jac^lambda(X)).

    Raises:
        DomainError: If the partition length differs from p or X is not
            interior.
    """
    p = params.p
    if partition.p != p:
        raise DomainError(f"Partition {partition.parts} does not have length {p}")
    X = _start_point(X, p)
    L, _ = choose_truncation(params, t, X, X, tol, reduced=True)
    rule = _rule(params, L + partition.size, order)

    def integrand(points):
        return _jacobi_dets(params, partition, points) * _kernel_dets(params, t, X, points, L)

    scale = math.exp(t * float(total_K(params))) / float(_signed_vandermonde(X))
    quadrature = scale * chamber_integrate(rule, p, integrand)
    closed = c_factor(params, partition, t) * multidim_jacobi(params, partition.parts, X)
    return quadrature, closed
