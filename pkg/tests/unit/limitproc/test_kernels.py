import math

import numpy as np
import pytest

from gt_flow.config import ModelParams
from gt_flow.ensembles import LimitEnsemble, density_rho
from gt_flow.errors import DomainError
from gt_flow.limitproc.kernels import choose_truncation, correlation_fn, extended_kernel
from gt_flow.limitproc.kernels import extended_kernel_block, heat_kernel, heat_kernel_matrix
from gt_flow.limitproc.kernels import multi_time_density, one_point_density, transition_density
from gt_flow.orthopoly.jacobi import j_functions


def test_heat_kernel():
    params = ModelParams(p=2, z_prime=3, w_prime=1)
    assert heat_kernel(params, 0.5, 0.3, 0.6) == pytest.approx(heat_kernel(params, 0.5, 0.6, 0.3))

    result = heat_kernel_matrix(params, 0.5, [0.2, 0.4], [0.3, 0.6, 0.9])
    assert result.values.shape == (2, 3)
    assert result.truncation > 1
    assert result.tail_bound < 1e-8

    short, _ = choose_truncation(params, 1.0, np.array([0.5]), np.array([0.5]), 1e-12)
    long, _ = choose_truncation(params, 0.1, np.array([0.5]), np.array([0.5]), 1e-12)
    assert short < long

    with pytest.raises(DomainError):
        heat_kernel(params, 0.5, 0.0, 0.5)
    with pytest.raises(DomainError):
        heat_kernel(params, 0.0, 0.3, 0.5)


def test_transition_density():
    params = ModelParams(p=2, z_prime=3, w_prime=1)
    assert transition_density(params, 0.5, [0.3, 0.6], [0.7, 0.2]) == 0.0
    assert transition_density(params, 0.5, [0.3, 0.6], [0.2, 0.7]) > 0.0

    # Far from time zero the chain has mixed to rho.
    ensemble = LimitEnsemble(params)
    value = transition_density(params, 5.0, [0.3, 0.6], [0.2, 0.7])
    assert value == pytest.approx(density_rho(ensemble, [0.2, 0.7]), rel=1e-6)

    with pytest.raises(DomainError):
        transition_density(params, 0.5, [0.3, 0.3], [0.2, 0.7])
    with pytest.raises(DomainError):
        transition_density(params, 0.5, [0.3], [0.2, 0.7])


def test_multi_time_density():
    params = ModelParams(p=2, z_prime=3, w_prime=1)
    ensemble = LimitEnsemble(params)
    X, Y = [0.3, 0.6], [0.2, 0.7]
    assert multi_time_density(params, [0.0], [X]) == pytest.approx(density_rho(ensemble, X))

    joint = multi_time_density(params, [0.0, 0.5], [X, Y])
    conditional = transition_density(params, 0.5, X, Y)
    assert joint == pytest.approx(density_rho(ensemble, X) * conditional, rel=1e-8)

    with pytest.raises(DomainError):
        multi_time_density(params, [0.5, 0.5], [X, Y])
    with pytest.raises(DomainError):
        multi_time_density(params, [0.0], [X, Y])


def test_extended_kernel():
    uniform = ModelParams(p=1, z_prime=1, w_prime=0)
    assert extended_kernel(uniform, 0.3, 0.0, 0.7, 0.0) == pytest.approx(1.0)
    assert extended_kernel(uniform, 0.3, 1.0, 0.7, 0.0) == pytest.approx(1.0)
    assert correlation_fn(uniform, [(0.3, 0.0)]) == pytest.approx(1.0)

    params = ModelParams(p=2, z_prime=3, w_prime=1)
    xs = np.array([0.2, 0.5, 0.8])
    diagonal = np.diag(extended_kernel_block(params, xs, 0.0, xs, 0.0))
    assert np.allclose(diagonal, one_point_density(params, xs))

    ensemble = LimitEnsemble(params)
    pair = correlation_fn(params, [(0.3, 0.0), (0.6, 0.0)])
    assert pair == pytest.approx(density_rho(ensemble, [0.3, 0.6]), rel=1e-8)

    j = j_functions(params, 1, [0.3, 0.6])
    head = sum(math.exp(-0.5 * K) * j[i, 0] * j[i, 1] for i, K in enumerate([0.0, 4.0]))
    tail = heat_kernel(params, 0.5, 0.3, 0.6) - head
    assert extended_kernel(params, 0.3, 0.0, 0.6, 0.5) == pytest.approx(-tail, abs=1e-10)

    with pytest.raises(DomainError):
        correlation_fn(params, [(0.3, 0.0), (0.3, 0.0)])
