"""Transition and cotransition probabilities in product form."""

from fractions import Fraction

from gt_flow import arithmetic
from gt_flow.config import ModelParams
from gt_flow.ensembles import GeneralZWMeasure, prob_MN_general
from gt_flow.errors import DomainError
from gt_flow.gt_core import (
    ParticleConfig,
    Signature,
    dim,
    interlaces,
    particles_interlace,
    up_neighbours,
    vandermonde,
)
from gt_flow.orthopoly.special import pochhammer
from gt_flow.types import Scalar


def cotransition(lam: Signature, mu: Signature) -> Fraction:
    """p_down(lam | mu) = Dim(lam) / Dim(mu) if lam ≺ mu, else 0."""
    if not interlaces(lam, mu):
        return Fraction(0)
    return Fraction(dim(lam), dim(mu))


def check_boxes(lower: ParticleConfig, upper: ParticleConfig, N: int, p: int) -> None:
    if (lower.level, lower.p) != (N, p) or (upper.level, upper.p) != (N + 1, p):
        raise DomainError(
            f"Boxes ({lower.level}, {lower.p}) -> ({upper.level}, {upper.p}) "
            f"do not match ({N}, {p}) -> ({N + 1}, {p})"
        )


def up_transition(
    params: ModelParams, N: int, X: ParticleConfig, X_next: ParticleConfig
) -> Scalar:
    """Up step X -> X' of the chain X(t).

    1 / (z'+w'+N+1)_p * V(X') / V(X) * prod_stay (z'+N-x_i) * prod_move (w'+1+x_i)

    Raises:
        DomainError: If the boxes are not (N, p) and (N+1, p).
    """
    check_boxes(X, X_next, N, params.p)
    zero = Fraction(0) if params.exact else 0.0
    if not particles_interlace(X, X_next):
        return zero
    z, w = params.z_prime, params.w_prime
    result = params.scalar(vandermonde(X_next.points)) / vandermonde(X.points)
    for x, y in zip(X.points, X_next.points):
        result *= (z + N - x) if y == x else (w + 1 + x)
    return result / pochhammer(z + w + N + 1, params.p)


def up_transition_generic(
    params: ModelParams, N: int, lam: Signature, mu: Signature
) -> Scalar:
    """p_up(lam -> mu) = M_{N+1}(mu) / M_N(lam) * p_down(lam | mu)."""
    lower = GeneralZWMeasure.from_params(params, N)
    upper = GeneralZWMeasure.from_params(params, N + 1)
    down = cotransition(lam, mu)
    if not down:
        return Fraction(0) if params.exact else 0.0
    ratio = prob_MN_general(upper, mu) / prob_MN_general(lower, lam)
    return ratio * (down if params.exact else float(down))


def down_transition(N: int, X_prev: ParticleConfig, X: ParticleConfig) -> Fraction:
    """Cotransition X -> X' from level N+1 to level N in particle coordinates.

    V(X') / V(X) * prod_stay (N+p-x_i) * prod_move x_i / prod_{i<=p} (N+i)

    Raises:
        DomainError: If the boxes are not (N, p) and (N+1, p).
    """
    p = X.p
    check_boxes(X_prev, X, N, p)
    if not particles_interlace(X_prev, X):
        return Fraction(0)
    result = Fraction(vandermonde(X_prev.points), vandermonde(X.points))
    for x_prev, x in zip(X_prev.points, X.points):
        result *= (N + p - x) if x_prev == x else x
    for i in range(1, p + 1):
        result /= N + i
    return result


def updown_composition(
    params: ModelParams, N: int, X: ParticleConfig, X_next: ParticleConfig
) -> Scalar:
    """sum over Y of p_down(X' | Y) p_up(Y | X)."""
    total = Fraction(0) if params.exact else 0.0
    for Y in up_neighbours(X):
        down = down_transition(N, X_next, Y)
        if down:
            total += up_transition(params, N, X, Y) * (down if params.exact else float(down))
    return total


def row_sum(params: ModelParams, N: int, X: ParticleConfig) -> Scalar:
    """sum over X' of p_up(X -> X')."""
    return sum(
        (up_transition(params, N, X, Y) for Y in up_neighbours(X)),
        arithmetic.convert(0, params.exact),
    )
