from fractions import Fraction

import numpy as np
import pytest

from gt_flow.chains.kernels import c_coeff, c_squared, matrix_vN, spectral_factorization_residual
from gt_flow.chains.kernels import down_transition_determinantal, updown_step_kernel
from gt_flow.chains.kernels import kernel_power_residual, kernel_transition, transition_matrix
from gt_flow.chains.kernels import up_transition_determinantal, updown_k_step_kernel
from gt_flow.chains.transitions import down_transition, up_transition, updown_composition
from gt_flow.config import ModelParams
from gt_flow.errors import DomainError
from gt_flow.gt_core import ParticleConfig, configs_in_box


def test_c_squared():
    params = ModelParams(p=2, z_prime=3, w_prime=1, mode="exact")
    assert c_squared(params, 1, 0) == 1
    assert c_squared(params, 1, 1) == Fraction(7, 9)
    assert c_squared(params, 1, 2) == Fraction(4, 9)

    with pytest.raises(DomainError):
        c_squared(params, 1, 3)


def test_matrix_vN():
    params = ModelParams(p=2, z_prime=3, w_prime=1)
    v = matrix_vN(params, 2).dense()
    assert v.shape == (4, 5)
    exact = matrix_vN(params.with_mode("exact"), 2).dense()
    assert np.allclose(v, exact, atol=1e-14)


def test_spectral_factorization():
    params = ModelParams(p=2, z_prime=3, w_prime=1)
    for N in range(5):
        assert spectral_factorization_residual(params, N) < 1e-12
    params = ModelParams(p=3, z_prime=2.5, w_prime=-0.5)
    assert spectral_factorization_residual(params, 4) < 1e-12


def test_kernel_power():
    params = ModelParams(p=2, z_prime=3, w_prime=1)
    for k in range(1, 4):
        assert kernel_power_residual(params, 3, k) < 1e-12

    with pytest.raises(DomainError):
        updown_k_step_kernel(params, 3, -1)


def test_transition_matrix():
    params = ModelParams(p=2, z_prime=3, w_prime=1, mode="exact")
    configs, T1 = transition_matrix(params, updown_k_step_kernel(params, 1, 1))
    _, T2 = transition_matrix(params, updown_k_step_kernel(params, 1, 2))
    assert len(configs) == 3
    assert all(sum(row) == 1 for row in T1)
    assert (T1.dot(T1) == T2).all()

    for a, X in enumerate(configs):
        for b, Y in enumerate(configs):
            assert T1[a, b] == updown_composition(params, 1, X, Y)

    float_params = params.as_float()
    _, T = transition_matrix(float_params, updown_k_step_kernel(float_params, 1, 2))
    assert np.allclose(T, T2.astype(float), atol=1e-12)


def test_kernel_transition_identity():
    params = ModelParams(p=2, z_prime=3, w_prime=1, mode="exact")
    kernel = updown_k_step_kernel(params, 2, 0)
    X = ParticleConfig((0, 2), 2, 2)
    assert kernel_transition(params, kernel, X, X) == 1
    assert kernel_transition(params, kernel, X, ParticleConfig((1, 2), 2, 2)) == 0


def test_up_transition_determinantal():
    params = ModelParams(p=2, z_prime=3, w_prime=1, mode="exact")
    for X in configs_in_box(1, 2):
        for Y in configs_in_box(2, 2):
            assert up_transition_determinantal(params, 1, X, Y) == up_transition(params, 1, X, Y)


def test_c_coeff():
    params = ModelParams(p=2, z_prime=3, w_prime=1)
    assert c_coeff(params, 1, 0) == pytest.approx(1.0)
    assert c_coeff(params, 1, 1) == pytest.approx(np.sqrt(7 / 9))


def test_down_transition_determinantal():
    params = ModelParams(p=2, z_prime=3, w_prime=1, mode="exact")
    for N in range(1, 3):
        for X_prev in configs_in_box(N, 2):
            for X in configs_in_box(N + 1, 2):
                assert down_transition_determinantal(params, N, X_prev, X) == down_transition(
                    N, X_prev, X
                )


def test_determinantal_box_mismatch():
    params = ModelParams(p=2, z_prime=3, w_prime=1, mode="exact")
    X, Y = ParticleConfig((0, 1), 1, 2), ParticleConfig((0, 2), 1, 2)
    for transition in (up_transition_determinantal, up_transition):
        with pytest.raises(DomainError, match=r"do not match \(1, 2\) -> \(2, 2\)"):
            transition(params, 1, X, Y)
    with pytest.raises(DomainError, match="do not match"):
        down_transition_determinantal(params, 1, X, Y)


def test_updown_step_kernel():
    params = ModelParams(p=2, z_prime=3, w_prime=1, mode="exact")
    one_step = updown_step_kernel(params, 2).matrix.dense()
    assert one_step.shape == (4, 4)
    np.testing.assert_allclose(one_step, one_step.T, atol=1e-14)
    np.testing.assert_allclose(
        one_step, updown_k_step_kernel(params, 2, 1).matrix.dense(), atol=1e-12
    )
