from fractions import Fraction

import jax
import numpy as np
import pytest
from scipy import stats

from gt_flow.chains.kernels import transition_matrix, updown_k_step_kernel
from gt_flow.chains.sampling import ChainState, advance_batch, down_step, up_step, updown_step
from gt_flow.chains.sampling import sample_up_chain, sample_updown_trajectory
from gt_flow.chains.sampling import stationary_batch, trajectory_keys
from gt_flow.config import ModelParams
from gt_flow.ensembles import DiscreteEnsemble, prob_PN
from gt_flow.errors import DomainError
from gt_flow.gt_core import ParticleConfig, configs_in_box, particles_interlace


def test_sample_up_chain():
    params = ModelParams(p=2, z_prime=3, w_prime=1)
    key = jax.random.key(0)
    path = sample_up_chain(params, 10, key)
    assert len(path) == 11
    assert path[0] == ParticleConfig((0, 1), 0, 2)
    assert [X.level for X in path] == list(range(11))
    assert all(particles_interlace(a, b) for a, b in zip(path, path[1:]))

    assert sample_up_chain(params, 10, key) == path

    with pytest.raises(DomainError):
        sample_up_chain(params, -1, key)


def test_sample_updown_trajectory():
    params = ModelParams(p=2, z_prime=3, w_prime=1)
    key = jax.random.key(1)
    trajectory = sample_updown_trajectory(params, 5, 20, key)
    assert len(trajectory) == 21
    assert all(X.level == 5 for X in trajectory)

    start = ParticleConfig((0, 5), 5, 2)
    trajectory = sample_updown_trajectory(params, 5, 3, key, init=start)
    assert trajectory[0] == start

    with pytest.raises(DomainError):
        sample_updown_trajectory(params, 5, 3, key, init=ParticleConfig((0, 1), 4, 2))
    with pytest.raises(DomainError):
        sample_updown_trajectory(params, 5, 3, key, init="empty")


def test_chain_state_steps():
    params = ModelParams(p=2, z_prime=3, w_prime=1)
    state = ChainState.create(ParticleConfig((0, 1), 0, 2), jax.random.key(2))

    state = up_step(params, state)
    assert state.level == 1
    assert state.time == 1
    assert particles_interlace(ParticleConfig((0, 1), 0, 2), state.config)

    moved = updown_step(params, state)
    assert moved.level == 1
    assert moved.time == 2

    state = down_step(state)
    assert state.config == ParticleConfig((0, 1), 0, 2)
    with pytest.raises(DomainError):
        down_step(state)


def test_batches():
    params = ModelParams(p=2, z_prime=3, w_prime=1)
    N = 8
    keys = trajectory_keys(0, np.arange(6))
    assert keys.shape == (6,)

    points = stationary_batch(params, N, keys)
    assert points.shape == (6, 2)
    points = np.asarray(advance_batch(params, N, keys, points, 5))
    assert points.shape == (6, 2)
    assert np.all(points[:, 0] < points[:, 1])
    assert np.all((points >= 0) & (points <= N + 1))

    again = np.asarray(advance_batch(params, N, keys, stationary_batch(params, N, keys), 5))
    assert np.array_equal(points, again)


def test_stationary_batch_distribution():
    params = ModelParams(p=1, z_prime=1, w_prime=0, mode="exact")
    n = 40000
    ensemble = DiscreteEnsemble(params, 2)
    probs = [prob_PN(ensemble, X) for X in configs_in_box(2, 1)]
    assert probs == [Fraction(1, 3)] * 3

    points = np.asarray(stationary_batch(params, 2, trajectory_keys(0, np.arange(n))))
    counts = np.bincount(points[:, 0], minlength=3)
    assert counts.sum() == n
    _, p_value = stats.chisquare(counts, n * np.array([float(q) for q in probs]))
    assert p_value > 0.0027


def test_advance_batch_transitions():
    params = ModelParams(p=1, z_prime=2, w_prime=1)
    N, n = 6, 40000
    configs, T = transition_matrix(params, updown_k_step_kernel(params, N, 2))
    assert [X.points[0] for X in configs] == list(range(N + 1))
    np.testing.assert_allclose(T.sum(axis=1), 1.0, atol=1e-12)

    start = np.asarray(stationary_batch(params, N, trajectory_keys(0, np.arange(n))))
    end = np.asarray(advance_batch(params, N, trajectory_keys(1, np.arange(n)), start, 2))
    counts = np.zeros((N + 1, N + 1))
    np.add.at(counts, (start[:, 0], end[:, 0]), 1)
    assert np.all(np.abs(start[:, 0] - end[:, 0]) <= 2)

    expected = counts.sum(axis=1, keepdims=True) * T
    assert np.all(counts[expected == 0] == 0)
    mask = expected >= 5
    statistic = np.sum((counts[mask] - expected[mask]) ** 2 / expected[mask])
    df = mask.sum() - np.count_nonzero(mask.any(axis=1))
    assert stats.chi2.sf(statistic, df) > 0.01
