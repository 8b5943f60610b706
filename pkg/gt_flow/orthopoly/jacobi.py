"""Jacobi polynomials on (0, 1).

Jac^n(x) = (alpha+1)_n / n! * 2F1(-n, n+alpha+beta+1; alpha+1; 1-x), orthogonal
against (1-x)^alpha x^beta. In the model alpha = z' - p and beta = w'.
"""

from dataclasses import dataclass, field
import math
from typing import Sequence

import numpy as np
from numpy.polynomial import Polynomial
from scipy import special

from gt_flow import arithmetic
from gt_flow.config import ModelParams
from gt_flow.errors import DomainError, ParameterError
from gt_flow.gt_core import vandermonde
from gt_flow.interface import IOrthogonalBasis
from gt_flow.orthopoly.special import pochhammer, terminating_hypergeometric
from gt_flow.types import NDArray, Scalar

CONFLUENT_GAP = 1e-9


@dataclass(frozen=True)
class JacobiBasis(IOrthogonalBasis):
    alpha: Scalar
    beta: Scalar
    max_degree: int = 64
    exact: bool = False
    norms: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        alpha = arithmetic.convert(self.alpha, self.exact)
        beta = arithmetic.convert(self.beta, self.exact)
        if not (alpha > -1 and beta > -1):
            raise ParameterError(f"Jacobi exponents must exceed -1, got {alpha}, {beta}")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)
        norms = ()
        if not self.exact or (arithmetic.is_integer(alpha) and arithmetic.is_integer(beta)):
            norms = tuple(_norm(alpha, beta, k, self.exact) for k in range(self.max_degree + 1))
        object.__setattr__(self, "norms", norms)

    @classmethod
    def from_params(cls, params: ModelParams, max_degree: int = 64) -> "JacobiBasis":
        return cls(
            alpha=params.z_prime - params.p,
            beta=params.w_prime,
            max_degree=max_degree,
            exact=params.exact,
        )

    def eval(self, k: int, x) -> Scalar:
        return jacobi_eval(self, k, x)

    def norm(self, k: int) -> Scalar:
        return jacobi_norm(self, k)

    def weight(self, x) -> Scalar:
        return jacobi_weight(self, x)


def _norm(alpha, beta, k: int, exact: bool) -> Scalar:
    if exact:
        g = lambda v: arithmetic.gamma(v, True)
        if k == 0:
            return g(alpha + 1) * g(beta + 1) / g(alpha + beta + 2)
        return (
            g(k + alpha + 1)
            * g(k + beta + 1)
            / ((2 * k + alpha + beta + 1) * g(k + alpha + beta + 1) * math.factorial(k))
        )
    return math.exp(_log_norm(alpha, beta, k))


def _log_norm(alpha: float, beta: float, k: int) -> float:
    lg = arithmetic.log_gamma
    if k == 0:
        return lg(alpha + 1) + lg(beta + 1) - lg(alpha + beta + 2)
    return (
        lg(k + alpha + 1)
        + lg(k + beta + 1)
        - math.log(2 * k + alpha + beta + 1)
        - lg(k + alpha + beta + 1)
        - lg(k + 1)
    )


def jacobi_eval(basis: JacobiBasis, n: int, x) -> Scalar:
    """Jac^n(x); exact for rational x in exact mode."""
    if n < 0:
        raise DomainError(f"Jacobi degree must be non-negative, got {n}")
    if basis.exact:
        x = arithmetic.to_fraction(x)
        series = terminating_hypergeometric(
            [-n, n + basis.alpha + basis.beta + 1], [basis.alpha + 1], 1 - x
        )
        return pochhammer(basis.alpha + 1, n) / math.factorial(n) * series
    return float(special.eval_jacobi(n, float(basis.alpha), float(basis.beta), 2 * float(x) - 1))


def jacobi_norm(basis: JacobiBasis, k: int) -> Scalar:
    """(Jac^k, Jac^k) against (1-x)^alpha x^beta on (0, 1)."""
    if k < 0:
        raise DomainError(f"Jacobi degree must be non-negative, got {k}")
    if k < len(basis.norms):
        return basis.norms[k]
    return _norm(basis.alpha, basis.beta, k, basis.exact)


def jacobi_log_norm(basis: JacobiBasis, k: int) -> float:
    return _log_norm(float(basis.alpha), float(basis.beta), k)


def jacobi_weight(basis: JacobiBasis, x) -> Scalar:
    if basis.exact:
        x = arithmetic.to_fraction(x)
        if not (0 <= x <= 1):
            raise DomainError(f"Point {x} outside [0, 1]")
        if not (arithmetic.is_integer(basis.alpha) and arithmetic.is_integer(basis.beta)):
            raise DomainError("Exact Jacobi weight needs integer exponents")
        return (1 - x) ** int(basis.alpha) * x ** int(basis.beta)
    x = float(x)
    if not (0 <= x <= 1):
        raise DomainError(f"Point {x} outside [0, 1]")
    return (1 - x) ** float(basis.alpha) * x ** float(basis.beta)


def jacobi_value_at_zero(basis: JacobiBasis, n: int) -> Scalar:
    """Jac^n(0) = (-1)^n (beta+1)_n / n!."""
    return (-1) ** n * pochhammer(basis.beta + 1, n) / math.factorial(n)


def jacobi_recurrence(alpha: float, beta: float, n: int) -> tuple[NDArray, NDArray]:
    """Jacobi matrix of the orthonormal polynomials on (0, 1).

    Returns:
        The diagonal (length n) and the off-diagonal (length n - 1), so that
        x p_k = b_{k+1} p_{k+1} + a_k p_k + b_k p_{k-1}.
    """
    a, b = float(alpha), float(beta)
    s = a + b
    k = np.arange(n, dtype=float)

    diagonal = np.empty(n)
    diagonal[0] = (b - a) / (s + 2)
    if n > 1:
        kk = k[1:]
        diagonal[1:] = (b * b - a * a) / ((2 * kk + s) * (2 * kk + s + 2))

    off = np.empty(max(n - 1, 0))
    if n > 1:
        off[0] = 4 * (1 + a) * (1 + b) / ((2 + s) ** 2 * (3 + s))
    if n > 2:
        kk = k[2:]
        off[1:] = (
            4 * kk * (kk + a) * (kk + b) * (kk + s)
            / ((2 * kk + s) ** 2 * (2 * kk + s + 1) * (2 * kk + s - 1))
        )
    # Shift from [-1, 1] to (0, 1).
    return (1 + diagonal) / 2, np.sqrt(off) / 2


def orthonormal_jacobi(alpha: float, beta: float, max_degree: int, xs) -> NDArray:
    """Orthonormal Jacobi polynomials p_k(x), k <= max_degree, at every x.

    The p_k have positive leading coefficients and satisfy
    int_0^1 p_k p_l (1-x)^alpha x^beta dx = delta_kl.

    Returns:
        An array of shape (max_degree + 1, len(xs)).
    """
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    diagonal, off = jacobi_recurrence(alpha, beta, max_degree + 1)
    values = np.empty((max_degree + 1, xs.size))
    values[0] = math.exp(-0.5 * float(special.betaln(alpha + 1, beta + 1)))
    if max_degree >= 1:
        values[1] = (xs - diagonal[0]) * values[0] / off[0]
    for k in range(1, max_degree):
        values[k + 1] = ((xs - diagonal[k]) * values[k] - off[k - 1] * values[k - 1]) / off[k]
    return values


def _check_interior(params: ModelParams, xs: NDArray) -> None:
    if np.any(xs < 0) or np.any(xs > 1):
        raise DomainError("Points must lie in [0, 1]")
    if float(params.w_prime) < 0 and np.any(xs == 0):
        raise DomainError("j^k is singular at x = 0 when wPrime < 0")
    if float(params.z_prime) - params.p < 0 and np.any(xs == 1):
        raise DomainError("j^k is singular at x = 1 when zPrime < p")


def j_functions(params: ModelParams, max_degree: int, xs) -> NDArray:
    """j^k(x) = Jac^k(x) sqrt(w(x) / (Jac^k, Jac^k)) for k <= max_degree.

    Returns:
        An array of shape (max_degree + 1, len(xs)).
    """
    alpha, beta = float(params.z_prime) - params.p, float(params.w_prime)
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    _check_interior(params, xs)
    sqrt_weight = np.sqrt((1 - xs) ** alpha * xs**beta)
    return orthonormal_jacobi(alpha, beta, max_degree, xs) * sqrt_weight


def j_eval(params: ModelParams, k: int, x: float) -> float:
    if k < 0:
        raise DomainError(f"Jacobi degree must be non-negative, got {k}")
    return float(j_functions(params, k, [x])[k, 0])


def jacobi_polynomial(alpha, beta, n: int) -> Polynomial:
    """Jac^n as a numpy Polynomial in x, from its hypergeometric expansion."""
    alpha, beta = float(alpha), float(beta)
    one_minus_x = Polynomial([1.0, -1.0])
    result = Polynomial([0.0])
    term = math.exp(special.gammaln(alpha + n + 1) - special.gammaln(alpha + 1)) / math.factorial(n)
    power = Polynomial([1.0])
    for j in range(n + 1):
        result = result + term * power
        term *= (-n + j) * (n + alpha + beta + 1 + j) / ((alpha + 1 + j) * (j + 1))
        power = power * one_minus_x
    return result


def _divided_difference(poly: Polynomial, points: Sequence[float]) -> float:
    """poly[x_1, ..., x_m] by repeated synthetic division; valid at repeated points."""
    quotient = poly
    for x in points[:-1]:
        quotient = (quotient - quotient(x)) // Polynomial([-x, 1.0])
    return float(quotient(points[-1]))


def multidim_jacobi(params: ModelParams, partition: Sequence[int], xs: Sequence[float]) -> float:
    """det[Jac^{lambda_i + p - i}(x_j)] / prod_{i>j} (x_i - x_j).

    When two coordinates are closer than 1e-9 the ratio is replaced by the
    determinant of divided differences, which equals it for distinct points.

    Raises:
        DomainError: If the partition or the point count do not match p.
    """
    p = params.p
    parts = tuple(int(v) for v in partition) + (0,) * (p - len(partition))
    if len(parts) != p or any(a < b for a, b in zip(parts, parts[1:])) or parts[-1] < 0:
        raise DomainError(f"{tuple(partition)} is not a partition with at most {p} parts")
    xs = [float(x) for x in xs]
    if len(xs) != p:
        raise DomainError(f"Expected {p} coordinates, got {len(xs)}")

    alpha, beta = float(params.z_prime) - p, float(params.w_prime)
    degrees = [parts[i] + p - 1 - i for i in range(p)]
    ordered = sorted(xs)
    gaps = [b - a for a, b in zip(ordered, ordered[1:])]
    if not gaps or min(gaps) >= CONFLUENT_GAP:
        rows = [
            [float(special.eval_jacobi(d, alpha, beta, 2 * x - 1)) for x in xs]
            for d in degrees
        ]
        return float(np.linalg.det(np.asarray(rows))) / float(vandermonde(xs))

    polys = [jacobi_polynomial(alpha, beta, d) for d in degrees]
    rows = [[_divided_difference(poly, xs[: j + 1]) for j in range(p)] for poly in polys]
    return float(np.linalg.det(np.asarray(rows)))
