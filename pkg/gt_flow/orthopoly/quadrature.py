from dataclasses import dataclass
import itertools
import math
from typing import Callable

import chex
import numpy as np
from scipy import linalg, special

from gt_flow.errors import ConvergenceError, ParameterError
from gt_flow.orthopoly.jacobi import jacobi_recurrence
from gt_flow.types import NDArray


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss rule for int_0^1 f(x) x^beta (1-x)^alpha dx.

    The weights include the weight function, so the rule integrates
    ``f`` and not ``f * weight``.
    """

    nodes: NDArray
    weights: NDArray
    alpha: float
    beta: float

    @property
    def size(self) -> int:
        return len(self.nodes)

    def integrate(self, values) -> float:
        values = np.asarray(values, dtype=float)
        chex.assert_shape(values, (self.size,))
        return float(self.weights @ values)


def gauss_jacobi_rule(alpha: float, beta: float, n: int) -> QuadratureRule:
    """Golub-Welsch: nodes are the eigenvalues of the Jacobi matrix and the
    weights are mu_0 times the squared first eigenvector components.

    Raises:
        ParameterError: If alpha or beta <= -1, or n < 1.
        ConvergenceError: If the eigen-solver fails.
    """
    alpha, beta = float(alpha), float(beta)
    if not (alpha > -1 and beta > -1):
        raise ParameterError(f"Quadrature exponents must exceed -1, got {alpha}, {beta}")
    if n < 1:
        raise ParameterError(f"Quadrature order must be positive, got {n}")

    diagonal, off_diagonal = jacobi_recurrence(alpha, beta, n)
    mu0 = math.exp(float(special.betaln(alpha + 1, beta + 1)))
    if n == 1:
        return QuadratureRule(diagonal.copy(), np.array([mu0]), alpha, beta)
    try:
        nodes, vectors = linalg.eigh_tridiagonal(diagonal, off_diagonal)
    except linalg.LinAlgError as e:
        raise ConvergenceError(f"Gauss-Jacobi eigen-solver failed for n={n}: {e}") from e
    weights = mu0 * vectors[0] ** 2
    return QuadratureRule(nodes, weights, alpha, beta)


def tensor_grid(rule: QuadratureRule, p: int) -> tuple[NDArray, NDArray]:
    """Product rule on [0, 1]^p.

    Returns:
        Points of shape (n^p, p) and weights of shape (n^p,).
    """
    index = np.array(list(itertools.product(range(rule.size), repeat=p)), dtype=int)
    index = index.reshape(-1, p)
    points = rule.nodes[index]
    weights = np.prod(rule.weights[index], axis=1)
    return points, weights


def chamber_integrate(
    rule: QuadratureRule, p: int, integrand: Callable[[NDArray], NDArray]
) -> float:
    """Integral over the ordered chamber of a symmetric integrand.

    Computed as 1/p! times the tensor-rule sum over the cube; the integrand
    is called once with all points, shape (n^p, p), and is integrated
    against prod_i x_i^beta (1-x_i)^alpha.
    """
    points, weights = tensor_grid(rule, p)
    values = np.asarray(integrand(points), dtype=float)
    chex.assert_shape(values, (points.shape[0],))
    return float(weights @ values) / math.factorial(p)
