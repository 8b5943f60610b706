"""Hahn polynomials Q^k(x; alpha, beta, M) on {0, ..., M}.

Normalization is Q^k(0) = 1, orthogonality weight

    w(x) = Gamma(alpha+x+1) Gamma(beta+M-x+1) / (Gamma(x+1) Gamma(M-x+1)).

Exact mode works with the reduced weight w / (Gamma(alpha+1) Gamma(beta+1))
and the reduced norms, which are rational for rational alpha, beta.
"""

from dataclasses import dataclass, field
from fractions import Fraction
import math

import numpy as np
from scipy import linalg

from gt_flow import arithmetic
from gt_flow.config import ModelParams
from gt_flow.errors import ConvergenceError, DomainError, ParameterError
from gt_flow.interface import IOrthogonalBasis
from gt_flow.orthopoly.special import pochhammer, terminating_hypergeometric
from gt_flow.types import NDArray, Scalar

SERIES_MAX_DEGREE = 30


@dataclass(frozen=True)
class HahnBasis(IOrthogonalBasis):
    alpha: Scalar
    beta: Scalar
    M: int
    exact: bool = False
    reduced_norms: tuple = field(init=False, repr=False, compare=False)
    log_norms: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        alpha = arithmetic.convert(self.alpha, self.exact)
        beta = arithmetic.convert(self.beta, self.exact)
        if not (alpha > -1 and beta > -1):
            raise ParameterError(f"Hahn exponents must exceed -1, got {alpha}, {beta}")
        if self.M < 0:
            raise ParameterError(f"Hahn support size M must be >= 0, got {self.M}")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "M", int(self.M))

        if self.exact:
            norms = tuple(_reduced_norm(alpha, beta, self.M, k) for k in range(self.M + 1))
            logs = tuple(
                math.log(n) + _log_gamma_prefactor(alpha, beta) for n in norms
            )
        else:
            logs = tuple(_log_norm(alpha, beta, self.M, k) for k in range(self.M + 1))
            norms = ()
        object.__setattr__(self, "reduced_norms", norms)
        object.__setattr__(self, "log_norms", logs)

    @classmethod
    def from_params(cls, params: ModelParams, N: int) -> "HahnBasis":
        return cls(
            alpha=params.w_prime,
            beta=params.z_prime - params.p,
            M=N + params.p - 1,
            exact=params.exact,
        )

    def eval(self, k: int, x: int) -> Scalar:
        return hahn_eval(self, k, x)

    def norm(self, k: int) -> Scalar:
        return hahn_norm(self, k)

    def weight(self, x: int) -> Scalar:
        return hahn_weight(self, x)


def _log_gamma_prefactor(alpha, beta) -> float:
    return arithmetic.log_gamma(alpha + 1) + arithmetic.log_gamma(beta + 1)


def _reduced_norm(alpha: Fraction, beta: Fraction, M: int, k: int) -> Fraction:
    if k == 0:
        return pochhammer(alpha + beta + 2, M) / math.factorial(M)
    s = alpha + beta
    return (
        pochhammer(k + s + 1, M + 1)
        * pochhammer(beta + 1, k)
        * math.factorial(k)
        * math.factorial(M - k)
        / ((2 * k + s + 1) * pochhammer(alpha + 1, k) * math.factorial(M) ** 2)
    )


def _log_norm(alpha: float, beta: float, M: int, k: int) -> float:
    lg = arithmetic.log_gamma
    s = alpha + beta
    if k == 0:
        reduced = lg(s + 2 + M) - lg(s + 2) - lg(M + 1)
    else:
        reduced = (
            lg(k + s + M + 2)
            - lg(k + s + 1)
            + lg(beta + 1 + k)
            - lg(beta + 1)
            + lg(k + 1)
            + lg(M - k + 1)
            - math.log(2 * k + s + 1)
            - lg(alpha + 1 + k)
            + lg(alpha + 1)
            - 2 * lg(M + 1)
        )
    return reduced + _log_gamma_prefactor(alpha, beta)


def _check_degree(basis: HahnBasis, k: int) -> None:
    if not 0 <= k <= basis.M:
        raise DomainError(f"Hahn degree {k} outside [0, {basis.M}]")


def _check_point(basis: HahnBasis, x: int) -> None:
    if not 0 <= x <= basis.M:
        raise DomainError(f"Hahn point {x} outside [0, {basis.M}]")


def hahn_eval_series(basis: HahnBasis, k: int, x: int) -> Scalar:
    """Q^k(x) from the terminating 3F2(-k, -x, k+alpha+beta+1; -M, alpha+1; 1)."""
    _check_degree(basis, k)
    _check_point(basis, x)
    value = terminating_hypergeometric(
        [-k, -x, k + basis.alpha + basis.beta + 1], [-basis.M, basis.alpha + 1], 1
    )
    return value if basis.exact else float(value)


def hahn_recurrence_coefficients(basis: HahnBasis) -> tuple[NDArray, NDArray]:
    """Coefficients (A_n, C_n) of -x Q_n = A_n Q_{n+1} - (A_n + C_n) Q_n + C_n Q_{n-1}."""
    a, b, M = float(basis.alpha), float(basis.beta), basis.M
    s = a + b
    n = np.arange(1, M + 1, dtype=float)
    A = np.empty(M + 1)
    C = np.zeros(M + 1)
    A[0] = (a + 1) * M / (s + 2)
    A[1:] = (n + s + 1) * (n + a + 1) * (M - n) / ((2 * n + s + 1) * (2 * n + s + 2))
    C[1:] = n * (n + s + M + 1) * (n + b) / ((2 * n + s) * (2 * n + s + 1))
    return A, C


def hahn_eval_recurrence(basis: HahnBasis, k: int, x: int) -> float:
    """Q^k(x) by the three-term recurrence in the degree."""
    _check_degree(basis, k)
    _check_point(basis, x)
    A, C = hahn_recurrence_coefficients(basis)
    previous, current = 0.0, 1.0
    for n in range(k):
        previous, current = current, ((A[n] + C[n] - x) * current - C[n] * previous) / A[n]
    return current


def hahn_eval(basis: HahnBasis, k: int, x: int) -> Scalar:
    """Q^k(x): series in exact mode or for k <= 30, recurrence otherwise."""
    if basis.exact or k <= SERIES_MAX_DEGREE:
        return hahn_eval_series(basis, k, x)
    return hahn_eval_recurrence(basis, k, x)


def hahn_log_norm(basis: HahnBasis, k: int) -> float:
    _check_degree(basis, k)
    return basis.log_norms[k]


def hahn_reduced_norm(basis: HahnBasis, k: int) -> Scalar:
    """(Q^k, Q^k) / (Gamma(alpha+1) Gamma(beta+1))."""
    _check_degree(basis, k)
    if basis.exact:
        return basis.reduced_norms[k]
    return math.exp(basis.log_norms[k] - _log_gamma_prefactor(basis.alpha, basis.beta))


def hahn_norm(basis: HahnBasis, k: int) -> Scalar:
    """Closed-form squared norm (Q^k, Q^k) against the Hahn weight."""
    _check_degree(basis, k)
    if basis.exact:
        prefactor = arithmetic.gamma(basis.alpha + 1, True) * arithmetic.gamma(
            basis.beta + 1, True
        )
        return prefactor * basis.reduced_norms[k]
    return math.exp(basis.log_norms[k])


def hahn_reduced_weight(basis: HahnBasis, x: int) -> Scalar:
    """w(x) / (Gamma(alpha+1) Gamma(beta+1))."""
    _check_point(basis, x)
    M = basis.M
    if basis.exact:
        return (
            pochhammer(basis.alpha + 1, x)
            * pochhammer(basis.beta + 1, M - x)
            / (math.factorial(x) * math.factorial(M - x))
        )
    return math.exp(hahn_log_weight(basis, x) - _log_gamma_prefactor(basis.alpha, basis.beta))


def hahn_log_weight(basis: HahnBasis, x: int) -> float:
    _check_point(basis, x)
    lg = arithmetic.log_gamma
    M = basis.M
    return (
        lg(basis.alpha + x + 1)
        + lg(basis.beta + M - x + 1)
        - lg(x + 1)
        - lg(M - x + 1)
    )


def hahn_weight(basis: HahnBasis, x: int) -> Scalar:
    if basis.exact:
        prefactor = arithmetic.gamma(basis.alpha + 1, True) * arithmetic.gamma(
            basis.beta + 1, True
        )
        return prefactor * hahn_reduced_weight(basis, x)
    return math.exp(hahn_log_weight(basis, x))


def hahn_inner_product(basis: HahnBasis, k: int, l: int) -> Scalar:
    """Sum over x of w(x) Q^k(x) Q^l(x), by direct summation."""
    return sum(
        (
            hahn_weight(basis, x) * hahn_eval(basis, k, x) * hahn_eval(basis, l, x)
            for x in range(basis.M + 1)
        ),
        Fraction(0) if basis.exact else 0.0,
    )


def hahn_dual_orthogonality_check(basis: HahnBasis, x: int, y: int) -> Scalar:
    """Sum over k of Q^k(x) Q^k(y) Gamma(alpha+1) Gamma(beta+1) / (Q^k, Q^k)."""
    _check_point(basis, x)
    _check_point(basis, y)
    total = Fraction(0) if basis.exact else 0.0
    for k in range(basis.M + 1):
        total += hahn_eval(basis, k, x) * hahn_eval(basis, k, y) / hahn_reduced_norm(basis, k)
    return total


def hahn_dual_orthogonality_rhs(basis: HahnBasis, x: int, y: int) -> Scalar:
    """delta_xy x!(M-x)! / ((alpha+1)_x (beta+1)_{M-x})."""
    _check_point(basis, x)
    _check_point(basis, y)
    if x != y:
        return Fraction(0) if basis.exact else 0.0
    return 1 / hahn_reduced_weight(basis, x)


def hahn_M_recurrence_check(
    basis: HahnBasis, k: int, x: int
) -> tuple[Scalar, Scalar]:
    """Both sides of x Q_k(x-1; M-1) + (M-x) Q_k(x; M-1) = M Q_k(x; M).

    Args:
        basis: The basis at size M-1.
        k: The degree, at most M-1.
        x: The point, in [0, M]; vanishing boundary terms are dropped.

    Returns:
        The left-hand and right-hand sides.
    """
    M = basis.M + 1
    upper = HahnBasis(basis.alpha, basis.beta, M, basis.exact)
    _check_degree(basis, k)
    _check_point(upper, x)
    zero = Fraction(0) if basis.exact else 0.0
    left = zero
    if x >= 1:
        left += x * hahn_eval(basis, k, x - 1)
    if x <= M - 1:
        left += (M - x) * hahn_eval(basis, k, x)
    return left, M * hahn_eval(upper, k, x)


def hahn_jacobi_matrix(basis: HahnBasis) -> tuple[NDArray, NDArray]:
    """Diagonal and off-diagonal of the Jacobi matrix of the orthonormal family."""
    A, C = hahn_recurrence_coefficients(basis)
    diagonal = A + C
    off_diagonal = np.sqrt(A[:-1] * C[1:])
    return diagonal, off_diagonal


def orthonormal_hahn_matrix(basis: HahnBasis) -> NDArray:
    """F[k, x] = Q^k(x) sqrt(w(x) / (Q^k, Q^k)) for all k, x in [0, M].

    The columns are the eigenvectors of the Jacobi matrix, whose eigenvalues
    are the support points 0, ..., M.

    Raises:
        ConvergenceError: If the tridiagonal eigen-solver fails.
    """
    if basis.M == 0:
        return np.ones((1, 1))
    diagonal, off_diagonal = hahn_jacobi_matrix(basis)
    try:
        nodes, vectors = linalg.eigh_tridiagonal(diagonal, off_diagonal)
    except linalg.LinAlgError as e:
        raise ConvergenceError(f"Hahn Jacobi matrix eigen-solver failed: {e}") from e
    if not np.allclose(nodes, np.arange(basis.M + 1), atol=1e-6 * (basis.M + 1)):
        raise ConvergenceError("Hahn Jacobi matrix eigenvalues are not 0, ..., M")

    vectors = vectors * np.sign(vectors[0])
    # Rows with positive leading coefficient differ from Q^k by (-1)^k.
    signs = (-1.0) ** np.arange(basis.M + 1)
    return vectors * signs[:, None]


def f_matrix(params: ModelParams, N: int) -> NDArray:
    """F_N with F_N[k, x] = f^k_N(x), float."""
    return orthonormal_hahn_matrix(HahnBasis.from_params(params.as_float(), N))


def f_eval(params: ModelParams, N: int, k: int, x: int) -> float:
    """Orthonormalized Hahn function f^k_N(x) = Q^k(x) sqrt(w_N(x) / (Q^k, Q^k)).

    In exact mode Q^k and w_N / (Q^k, Q^k) are exact and a single float
    square root is taken.
    """
    basis = HahnBasis.from_params(params, N)
    _check_degree(basis, k)
    _check_point(basis, x)
    if params.exact:
        ratio = hahn_reduced_weight(basis, x) / hahn_reduced_norm(basis, k)
        return float(hahn_eval(basis, k, x)) * math.sqrt(ratio)
    if k <= SERIES_MAX_DEGREE:
        scale = math.exp(0.5 * (hahn_log_weight(basis, x) - hahn_log_norm(basis, k)))
        return hahn_eval_series(basis, k, x) * scale
    return float(orthonormal_hahn_matrix(basis)[k, x])
