"""Hahn polynomials degenerate to Jacobi polynomials as M grows.

Q^i(floor(M x); w', z'-p, M) -> Jac^i(x) / Jac^i(0) with M = N + p - 1,
uniformly on compacts, and M^{w'+z'+1-p} / (Q^i, Q^i) -> Jac^i(0)^2 / (Jac^i, Jac^i).
"""

import math
from typing import Sequence

from gt_flow.config import ModelParams
from gt_flow.orthopoly.hahn import HahnBasis, hahn_eval, hahn_log_norm
from gt_flow.orthopoly.jacobi import (
    JacobiBasis,
    jacobi_eval,
    jacobi_log_norm,
    jacobi_value_at_zero,
)

# Decimal grid points such as 0.35 must land on the site they name.
SITE_EPS = 1e-9


def lattice_site(M: int, x: float) -> int:
    """floor(M x), robust to the rounding of x."""
    return math.floor(M * x + SITE_EPS)


def hahn_jacobi_limit_error(params: ModelParams, N: int, i: int, xs: Sequence[float]) -> float:
    """sup over xs of |Q^i(floor(M x)) - Jac^i(x) / Jac^i(0)|."""
    params = params.as_float()
    hahn = HahnBasis.from_params(params, N)
    jacobi = JacobiBasis.from_params(params, max_degree=i)
    at_zero = jacobi_value_at_zero(jacobi, i)
    error = 0.0
    for x in xs:
        site = lattice_site(hahn.M, x)
        error = max(error, abs(hahn_eval(hahn, i, site) - jacobi_eval(jacobi, i, x) / at_zero))
    return error


def hahn_norm_ratio_limit(params: ModelParams, N: int, i: int) -> tuple[float, float]:
    """Returns (M^{w'+z'+1-p} / (Q^i, Q^i), Jac^i(0)^2 / (Jac^i, Jac^i))."""
    params = params.as_float()
    hahn = HahnBasis.from_params(params, N)
    jacobi = JacobiBasis.from_params(params, max_degree=i)
    exponent = float(params.w_prime + params.z_prime) + 1 - params.p
    ratio = math.exp(exponent * math.log(hahn.M) - hahn_log_norm(hahn, i))
    at_zero = float(jacobi_value_at_zero(jacobi, i))
    limit = math.exp(2 * math.log(abs(at_zero)) - jacobi_log_norm(jacobi, i))
    return ratio, limit
