from fractions import Fraction

import pytest

from gt_flow.config import ModelParams
from gt_flow.ensembles import DiscreteEnsemble, GeneralZWMeasure, LimitEnsemble
from gt_flow.ensembles import normalization_Z, normalization_by_enumeration, weight_wN
from gt_flow.ensembles import prob_MN_general, prob_PN, prob_PN_via_signatures
from gt_flow.ensembles import pushforward_mismatches
from gt_flow.ensembles import density_rho, discrete_to_continuum_check, round_half_up
from gt_flow.errors import DomainError, ParameterError
from gt_flow.gt_core import ParticleConfig, Signature, configs_in_box


def exact(p, z_prime, w_prime):
    return ModelParams(p=p, z_prime=z_prime, w_prime=w_prime, mode="exact")


def test_normalization_values():
    assert normalization_Z(exact(2, 2, 0), 1) == Fraction(1, 6)
    assert normalization_Z(exact(2, 3, 1), 2) == Fraction(1, 420)
    assert normalization_Z(exact(1, 1, 2), 1) == Fraction(1, 8)
    assert normalization_Z(exact(2, 3, 1), 1) == Fraction(1, 60)

    for N in range(5):
        assert normalization_Z(exact(1, 1, 0), N) == Fraction(1, N + 1)


def test_normalization_by_enumeration():
    for params in [exact(2, 2, 0), exact(2, 3, 1), exact(3, 4, 0)]:
        for N in range(4):
            assert normalization_by_enumeration(params, N) == normalization_Z(params, N)

    params = ModelParams(p=2, z_prime=2.5, w_prime=0.5)
    assert normalization_Z(params, 3) == pytest.approx(normalization_by_enumeration(params, 3))


def test_prob_PN():
    params = exact(2, 3, 1)
    ensemble = DiscreteEnsemble(params, 3)
    assert sum(prob_PN(ensemble, X) for X in configs_in_box(3, 2)) == 1
    assert all(prob_PN(ensemble, X) > 0 for X in configs_in_box(3, 2))

    float_ensemble = DiscreteEnsemble(params.as_float(), 3)
    X = ParticleConfig((1, 3), 3, 2)
    assert prob_PN(float_ensemble, X) == pytest.approx(float(prob_PN(ensemble, X)))

    with pytest.raises(DomainError):
        prob_PN(ensemble, ParticleConfig((1, 3), 2, 2))
    with pytest.raises(DomainError):
        weight_wN(params, 3, 5)
    with pytest.raises(ParameterError):
        DiscreteEnsemble(params, -1)


def test_pushforward():
    for N in range(4):
        assert pushforward_mismatches(exact(2, 3, 1), N) == []
        assert pushforward_mismatches(exact(1, 2, 0), N) == []

    meas = GeneralZWMeasure.from_params(exact(2, 3, 1), 2)
    assert prob_MN_general(meas, Signature((3, 0))) == 0
    assert sum(prob_MN_general(meas, lam) for lam in meas.support()) == 1

    ensemble = DiscreteEnsemble(exact(2, 3, 1), 2)
    for X in configs_in_box(2, 2):
        assert prob_PN_via_signatures(exact(2, 3, 1), 2, X) == prob_PN(ensemble, X)

    with pytest.raises(DomainError):
        prob_MN_general(meas, Signature((1,)))
    with pytest.raises(ParameterError):
        GeneralZWMeasure(2, 0, Fraction(1), Fraction(1), 2)


def test_density_rho():
    uniform = LimitEnsemble(ModelParams(p=1, z_prime=1, w_prime=0))
    assert uniform.B == pytest.approx(1.0)
    assert density_rho(uniform, [0.3]) == pytest.approx(1.0)

    ensemble = LimitEnsemble(ModelParams(p=2, z_prime=3, w_prime=1))
    assert density_rho(ensemble, [0.6, 0.3]) == 0.0
    assert density_rho(ensemble, [0.5, 0.5]) == 0.0
    assert density_rho(ensemble, [0.3, 0.6]) > 0.0

    with pytest.raises(DomainError):
        density_rho(ensemble, [0.3])
    singular = LimitEnsemble(ModelParams(p=1, z_prime=1, w_prime=-0.5))
    with pytest.raises(DomainError):
        density_rho(singular, [0.0])


def test_discrete_to_continuum():
    assert round_half_up(1.5) == 2
    assert round_half_up(2.5) == 3

    scaled, rho = discrete_to_continuum_check(exact(1, 1, 0), 4, [0.5])
    assert scaled == Fraction(4, 5)
    assert rho == pytest.approx(1.0)

    params = ModelParams(p=2, z_prime=3, w_prime=1)
    scaled_small, rho = discrete_to_continuum_check(params, 50, [0.3, 0.6])
    scaled_large, _ = discrete_to_continuum_check(params, 400, [0.3, 0.6])
    assert abs(scaled_large - rho) < abs(scaled_small - rho)

    with pytest.raises(DomainError):
        discrete_to_continuum_check(params, 2, [0.5, 0.55])
