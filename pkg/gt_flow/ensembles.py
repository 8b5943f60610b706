"""Probability measures of the model.

P_N is the orthogonal polynomial ensemble with the Hahn weight w_N on p
particles in {0, ..., N+p-1}; it is the pushforward of M_N^{p,0,z',w'}. As N
grows, the rescaled ensemble converges to the Jacobi ensemble with density
rho on the Weyl chamber.
"""

from dataclasses import dataclass, field
from fractions import Fraction
import math
from typing import Any, Sequence

from absl import logging
import numpy as np
from scipy import special

from gt_flow import arithmetic
from gt_flow.config import ModelParams
from gt_flow.errors import DomainError, ParameterError
from gt_flow.gt_core import (
    ParticleConfig,
    Signature,
    configs_in_box,
    dim,
    from_particles,
    signatures_in_box,
    to_particles,
    vandermonde,
)
from gt_flow.orthopoly.quadrature import chamber_integrate, gauss_jacobi_rule
from gt_flow.orthopoly.special import pochhammer
from gt_flow.types import Scalar


def _check_site(params: ModelParams, N: int, x: int) -> None:
    if not 0 <= x <= N + params.p - 1:
        raise DomainError(f"Site {x} outside {{0, ..., {N + params.p - 1}}}")


def weight_wN(params: ModelParams, N: int, x: int) -> Scalar:
    """w_N(x) = Gamma(z'+N-x) Gamma(w'+x+1) / (Gamma(N+p-x) Gamma(x+1))."""
    _check_site(params, N, x)
    if not params.exact:
        return math.exp(log_weight_wN(params, N, x))
    g = lambda v: arithmetic.gamma(v, True)
    z, w, p = params.z_prime, params.w_prime, params.p
    return g(z + N - x) * g(w + x + 1) / (g(N + p - x) * g(x + 1))


def log_weight_wN(params: ModelParams, N: int, x: int) -> float:
    _check_site(params, N, x)
    lg = arithmetic.log_gamma
    z, w, p = float(params.z_prime), float(params.w_prime), params.p
    return lg(z + N - x) + lg(w + x + 1) - lg(N + p - x) - lg(x + 1)


def normalization_Z(params: ModelParams, N: int) -> Scalar:
    """prod_{i<=N} (i)_p / (z'+w'+i)_p * prod_{i<=p} 1 / (Gamma(w'+i) Gamma(z'-i+1))."""
    if not params.exact:
        return math.exp(log_normalization_Z(params, N))
    z, w, p = params.z_prime, params.w_prime, params.p
    result = Fraction(1)
    for i in range(1, N + 1):
        result *= Fraction(pochhammer(i, p)) / pochhammer(z + w + i, p)
    for i in range(1, p + 1):
        result /= arithmetic.gamma(w + i, True) * arithmetic.gamma(z - i + 1, True)
    return result


def log_normalization_Z(params: ModelParams, N: int) -> float:
    lg = arithmetic.log_gamma
    z, w, p = float(params.z_prime), float(params.w_prime), params.p
    i = np.arange(1, N + 1, dtype=float)
    head = float(
        np.sum(special.gammaln(i + p) - special.gammaln(i))
        - np.sum(special.gammaln(z + w + i + p) - special.gammaln(z + w + i))
    )
    tail = sum(lg(w + i) + lg(z - i + 1) for i in range(1, p + 1))
    return head - tail


def normalization_by_enumeration(params: ModelParams, N: int) -> Scalar:
    """1 / sum over all configurations of V^2(X) prod w_N(x_i)."""
    total = Fraction(0) if params.exact else 0.0
    for config in configs_in_box(N, params.p):
        total += vandermonde(config.points) ** 2 * arithmetic.product(
            (weight_wN(params, N, x) for x in config.points), params.exact
        )
    return 1 / total


@dataclass(frozen=True)
class DiscreteEnsemble:
    """P_N^{p,z',w'} on ParticleConfigs of the box (N, p)."""

    params: ModelParams
    N: int
    Z: Scalar = field(init=False, repr=False)
    log_Z: float = field(init=False, repr=False)

    def __post_init__(self):
        if self.N < 0:
            raise ParameterError(f"Level N must be non-negative, got {self.N}")
        log_Z = log_normalization_Z(self.params, self.N)
        Z = normalization_Z(self.params, self.N) if self.params.exact else math.exp(log_Z)
        object.__setattr__(self, "Z", Z)
        object.__setattr__(self, "log_Z", log_Z)

    def to_dict(self) -> dict[str, Any]:
        return {**self.params.to_dict(), "N": self.N}


def _check_box(ensemble: DiscreteEnsemble, X: ParticleConfig) -> None:
    if X.level != ensemble.N or X.p != ensemble.params.p:
        raise DomainError(
            f"Configuration in box ({X.level}, {X.p}), "
            f"expected ({ensemble.N}, {ensemble.params.p})"
        )


def log_prob_PN(ensemble: DiscreteEnsemble, X: ParticleConfig) -> float:
    _check_box(ensemble, X)
    params, N = ensemble.params, ensemble.N
    log_v = sum(
        math.log(b - a) for i, a in enumerate(X.points) for b in X.points[i + 1 :]
    )
    return ensemble.log_Z + 2 * log_v + sum(log_weight_wN(params, N, x) for x in X.points)


def prob_PN(ensemble: DiscreteEnsemble, X: ParticleConfig) -> Scalar:
    """P_N(X) = Z V^2(X) prod w_N(x_i)."""
    _check_box(ensemble, X)
    if not ensemble.params.exact:
        return math.exp(log_prob_PN(ensemble, X))
    params, N = ensemble.params, ensemble.N
    weights = arithmetic.product((weight_wN(params, N, x) for x in X.points), True)
    return ensemble.Z * vandermonde(X.points) ** 2 * weights


@dataclass(frozen=True)
class GeneralZWMeasure:
    """M_N^{z,w,z',w'} with integer z = k and w = l."""

    k: int
    l: int
    z_prime: Scalar
    w_prime: Scalar
    N: int
    exact: bool = True

    def __post_init__(self):
        if not (arithmetic.is_integer(self.k) and arithmetic.is_integer(self.l)):
            raise ParameterError(f"k and l must be integers, got {self.k}, {self.l}")
        object.__setattr__(self, "k", int(self.k))
        object.__setattr__(self, "l", int(self.l))
        z_prime = arithmetic.convert(self.z_prime, self.exact)
        w_prime = arithmetic.convert(self.w_prime, self.exact)
        if self.exact and not (arithmetic.is_integer(z_prime) and arithmetic.is_integer(w_prime)):
            raise ParameterError("Exact mode requires integer zPrime and wPrime")
        if self.k + self.l < 0 or not z_prime - self.k > -1 or not w_prime - self.l > -1:
            raise ParameterError(
                f"Inadmissible quadruple ({self.k}, {self.l}, {z_prime}, {w_prime})"
            )
        if self.N < 0:
            raise ParameterError(f"Level N must be non-negative, got {self.N}")
        object.__setattr__(self, "z_prime", z_prime)
        object.__setattr__(self, "w_prime", w_prime)

    @classmethod
    def from_params(cls, params: ModelParams, N: int) -> "GeneralZWMeasure":
        return cls(params.p, 0, params.z_prime, params.w_prime, N, params.exact)

    def support(self) -> list[Signature]:
        """Signatures with k >= lambda_1 and lambda_N >= -l."""
        return signatures_in_box(self.N, self.k, -self.l)

    def shifted(self, n: int) -> "GeneralZWMeasure":
        return GeneralZWMeasure(
            self.k + n, self.l - n, self.z_prime + n, self.w_prime - n, self.N, self.exact
        )


def _log_S(meas: GeneralZWMeasure) -> float:
    lg = arithmetic.log_gamma
    z, w, zp, wp = meas.k, meas.l, float(meas.z_prime), float(meas.w_prime)
    return sum(
        lg(z + w + zp + wp + i)
        - lg(z + w + i)
        - lg(z + wp + i)
        - lg(zp + w + i)
        - lg(zp + wp + i)
        - lg(i)
        for i in range(1, meas.N + 1)
    )


def _S(meas: GeneralZWMeasure) -> Fraction:
    g = lambda v: arithmetic.gamma(v, True)
    z, w, zp, wp = meas.k, meas.l, meas.z_prime, meas.w_prime
    result = Fraction(1)
    for i in range(1, meas.N + 1):
        result *= g(z + w + zp + wp + i) / (
            g(z + w + i) * g(z + wp + i) * g(zp + w + i) * g(zp + wp + i) * g(i)
        )
    return result


def prob_MN_general(meas: GeneralZWMeasure, lam: Signature) -> Scalar:
    """S_N^{-1} Dim^2(lam) prod_i 1 / (Gamma(z-lam_i+i) Gamma(w+N+1+lam_i-i)
    Gamma(z'-lam_i+i) Gamma(w'+N+1+lam_i-i)); zero off the support.

    Raises:
        DomainError: If lam is not of level N.
    """
    N = meas.N
    if lam.level != N:
        raise DomainError(f"Signature of level {lam.level}, expected {N}")
    zero = Fraction(0) if meas.exact else 0.0
    if N and (lam.parts[0] > meas.k or lam.parts[-1] < -meas.l):
        return zero

    if meas.exact:
        result = Fraction(dim(lam) ** 2) / _S(meas)
        for i, part in enumerate(lam.parts, start=1):
            result *= (
                arithmetic.rgamma(meas.k - part + i, True)
                * arithmetic.rgamma(meas.l + N + 1 + part - i, True)
                * arithmetic.rgamma(meas.z_prime - part + i, True)
                * arithmetic.rgamma(meas.w_prime + N + 1 + part - i, True)
            )
        return result

    lg = arithmetic.log_gamma
    log_mass = 2 * math.log(dim(lam)) - _log_S(meas)
    for i, part in enumerate(lam.parts, start=1):
        log_mass -= (
            lg(meas.k - part + i)
            + lg(meas.l + N + 1 + part - i)
            + lg(float(meas.z_prime) - part + i)
            + lg(float(meas.w_prime) + N + 1 + part - i)
        )
    return math.exp(log_mass)


def prob_PN_via_signatures(params: ModelParams, N: int, X: ParticleConfig) -> Scalar:
    """Mass of X under the pushforward of M_N^{p,0,z',w'}."""
    return prob_MN_general(GeneralZWMeasure.from_params(params, N), from_particles(X))


def pushforward_mismatches(params: ModelParams, N: int) -> list[Signature]:
    """Signatures whose M_N mass differs from the P_N mass of their configuration."""
    ensemble = DiscreteEnsemble(params, N)
    meas = GeneralZWMeasure.from_params(params, N)
    return [
        lam
        for lam in meas.support()
        if prob_MN_general(meas, lam) != prob_PN(ensemble, to_particles(lam, params.p))
    ]


def limit_weight(params: ModelParams, x: float) -> float:
    """x^{w'} (1-x)^{z'-p}."""
    return float(x) ** float(params.w_prime) * (1 - float(x)) ** (float(params.z_prime) - params.p)


def vandermonde_squared(points) -> np.ndarray:
    points = np.asarray(points, dtype=float)
    p = points.shape[-1]
    result = np.ones(points.shape[:-1])
    for i in range(p):
        for j in range(i + 1, p):
            result = result * (points[..., j] - points[..., i]) ** 2
    return result


@dataclass(frozen=True)
class LimitEnsemble:
    """rho(X) = B V^2(X) prod x_i^{w'} (1-x_i)^{z'-p} on the ordered chamber.

    B is computed by symmetrized Gauss-Jacobi quadrature over the cube.
    """

    params: ModelParams
    quadrature_order: int | None = None
    B: float = field(init=False, repr=False)

    def __post_init__(self):
        params = self.params.as_float()
        object.__setattr__(self, "params", params)
        p = params.p
        n = self.quadrature_order or 8 * (p - 1) + 16
        object.__setattr__(self, "quadrature_order", n)
        rule = gauss_jacobi_rule(float(params.z_prime) - p, float(params.w_prime), n)
        mass = chamber_integrate(rule, p, vandermonde_squared)
        object.__setattr__(self, "B", 1 / mass)
        logging.debug(f"Limit ensemble {params.to_dict()}: B = {1 / mass} (order {n})")

    def to_dict(self) -> dict[str, Any]:
        return self.params.to_dict()


def density_rho(ensemble: LimitEnsemble, X: Sequence[float]) -> float:
    """Density on the ordered chamber; zero unless 0 <= x_1 < ... < x_p <= 1.

    Raises:
        DomainError: If a coordinate sits on a boundary where the weight is
            singular.
    """
    params = ensemble.params
    xs = [float(x) for x in X]
    if len(xs) != params.p:
        raise DomainError(f"Expected {params.p} coordinates, got {len(xs)}")
    if any(a >= b for a, b in zip(xs, xs[1:])) or xs[0] < 0 or xs[-1] > 1:
        return 0.0
    if (xs[0] == 0 and params.w_prime < 0) or (xs[-1] == 1 and params.z_prime < params.p):
        raise DomainError(f"Density is singular at {tuple(xs)}")
    weights = math.prod(limit_weight(params, x) for x in xs)
    return ensemble.B * float(vandermonde_squared(xs)) * weights


def round_half_up(value: float) -> int:
    return math.floor(value + 0.5)


def discrete_to_continuum_check(
    params: ModelParams, N: int, X: Sequence[float], ensemble: LimitEnsemble | None = None
) -> tuple[Scalar, float]:
    """Returns ((N+p-1)^p P_N(round((N+p-1) X)), rho(X)).

    Raises:
        DomainError: If two coordinates round to the same lattice site.
    """
    p = params.p
    M = N + p - 1
    sites = [round_half_up(M * float(x)) for x in X]
    if len(set(sites)) != len(sites):
        raise DomainError(f"Points {tuple(X)} collide on the lattice of level {N}")
    config = ParticleConfig(tuple(sites), N, p)
    discrete = DiscreteEnsemble(params, N)
    if params.exact:
        scaled = Fraction(M) ** p * prob_PN(discrete, config)
    else:
        scaled = math.exp(p * math.log(M) + log_prob_PN(discrete, config)) if M else 0.0
    ensemble = ensemble or LimitEnsemble(params)
    return scaled, density_rho(ensemble, X)
