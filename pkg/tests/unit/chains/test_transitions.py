from fractions import Fraction

import pytest

from gt_flow.chains.transitions import cotransition, down_transition, row_sum, up_transition
from gt_flow.chains.transitions import up_transition_generic, updown_composition
from gt_flow.config import ModelParams
from gt_flow.errors import DomainError
from gt_flow.gt_core import ParticleConfig, Signature, configs_in_box, from_particles


def test_up_transition_uniform():
    params = ModelParams(p=1, z_prime=1, w_prime=0, mode="exact")
    X = ParticleConfig((0,), 0, 1)
    assert up_transition(params, 0, X, ParticleConfig((0,), 1, 1)) == Fraction(1, 2)
    assert up_transition(params, 0, X, ParticleConfig((1,), 1, 1)) == Fraction(1, 2)

    float_params = params.as_float()
    assert up_transition(float_params, 0, X, ParticleConfig((1,), 1, 1)) == pytest.approx(0.5)


def test_up_transition_rows():
    params = ModelParams(p=2, z_prime=3, w_prime=1, mode="exact")
    for N in range(3):
        for X in configs_in_box(N, 2):
            assert row_sum(params, N, X) == 1

    X = ParticleConfig((0, 1), 1, 2)
    assert up_transition(params, 1, X, ParticleConfig((2, 3), 2, 2)) == 0

    with pytest.raises(DomainError):
        up_transition(params, 1, X, ParticleConfig((0, 1), 1, 2))


def test_up_transition_generic():
    params = ModelParams(p=2, z_prime=3, w_prime=1, mode="exact")
    for X in configs_in_box(1, 2):
        for Y in configs_in_box(2, 2):
            generic = up_transition_generic(params, 1, from_particles(X), from_particles(Y))
            assert generic == up_transition(params, 1, X, Y)


def test_down_transition():
    assert cotransition(Signature((1,)), Signature((2, 0))) == Fraction(1, 3)
    assert cotransition(Signature((3,)), Signature((2, 0))) == 0

    for Y in configs_in_box(2, 2):
        total = sum(down_transition(1, X, Y) for X in configs_in_box(1, 2))
        assert total == 1


def test_updown_composition():
    params = ModelParams(p=2, z_prime=3, w_prime=1, mode="exact")
    for X in configs_in_box(2, 2):
        total = sum(updown_composition(params, 2, X, Y) for Y in configs_in_box(2, 2))
        assert total == 1
