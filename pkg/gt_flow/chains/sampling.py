"""Exact samplers of the up chain and of the up-down chain.

A step enumerates the 2^p move patterns of the particles and draws one from
the product-form transition weights; kernels are never materialized.
Randomness is derived with ``jax.random.fold_in`` from (seed, trajectory
index, step), so results do not depend on batching or scheduling.
"""

import functools
import itertools
from typing import Sequence

from flax import struct
import jax
import jax.numpy as jnp
import numpy as np

from gt_flow.config import ModelParams
from gt_flow.errors import DomainError
from gt_flow.gt_core import ParticleConfig


@functools.lru_cache(maxsize=None)
def _move_patterns(p: int) -> np.ndarray:
    return np.array(list(itertools.product((0, 1), repeat=p)), dtype=np.int64)


def _log_vandermonde(points: jax.Array) -> jax.Array:
    p = points.shape[-1]
    i, j = np.triu_indices(p, k=1)
    x = points.astype(jnp.float64)
    return jnp.sum(jnp.log(x[..., j] - x[..., i]), axis=-1)


def _up_move(z: float, w: float, key: jax.Array, points: jax.Array, level) -> jax.Array:
    moves = jnp.asarray(_move_patterns(points.shape[-1]))
    candidates = points[None, :] + moves
    x = points.astype(jnp.float64)[None, :]
    log_factors = jnp.where(moves == 1, jnp.log(w + 1 + x), jnp.log(z + level - x))
    logits = _log_vandermonde(candidates) + jnp.sum(log_factors, axis=-1)
    return candidates[jax.random.categorical(key, logits)]


def _down_move(key: jax.Array, points: jax.Array, level) -> jax.Array:
    """From level + 1 down to level."""
    p = points.shape[-1]
    moves = jnp.asarray(_move_patterns(p))
    candidates = points[None, :] - moves
    x = points.astype(jnp.float64)[None, :]
    log_factors = jnp.where(moves == 1, jnp.log(x), jnp.log(level + p - x))
    logits = _log_vandermonde(candidates) + jnp.sum(log_factors, axis=-1)
    return candidates[jax.random.categorical(key, logits)]


def _updown_move(z: float, w: float, key: jax.Array, points: jax.Array, level) -> jax.Array:
    up_key, down_key = jax.random.split(key)
    return _down_move(down_key, _up_move(z, w, up_key, points, level), level)


@functools.partial(jax.jit, static_argnames=("p", "n_levels"))
def _up_chain(z: float, w: float, key: jax.Array, p: int, n_levels: int) -> jax.Array:
    def body(points, level):
        next_points = _up_move(z, w, jax.random.fold_in(key, level), points, level)
        return next_points, next_points

    start = jnp.arange(p, dtype=jnp.int64)
    _, path = jax.lax.scan(body, start, jnp.arange(n_levels))
    return jnp.concatenate([start[None], path])


@functools.partial(jax.jit, static_argnames=("steps",))
def _updown_path(z: float, w: float, N, key: jax.Array, points: jax.Array, steps: int) -> jax.Array:
    def body(current, t):
        next_points = _updown_move(z, w, jax.random.fold_in(key, t), current, N)
        return next_points, next_points

    _, path = jax.lax.scan(body, points, jnp.arange(steps))
    return jnp.concatenate([points[None], path])


@functools.partial(jax.jit, static_argnames=("steps",))
def _advance(z: float, w: float, N, key: jax.Array, points: jax.Array, steps: int) -> jax.Array:
    def body(current, t):
        return _updown_move(z, w, jax.random.fold_in(key, t), current, N), None

    final, _ = jax.lax.scan(body, points, jnp.arange(steps))
    return final


def _floats(params: ModelParams) -> tuple[float, float]:
    return float(params.z_prime), float(params.w_prime)


class ChainState(struct.PyTreeNode):
    """Particle positions of one chain with its own random stream.

    The key of the next step is ``fold_in(key, time)``.
    """

    points: jax.Array
    key: jax.Array
    time: int = 0
    level: int = struct.field(pytree_node=False, default=0)

    @classmethod
    def create(cls, config: ParticleConfig, key: jax.Array) -> "ChainState":
        return cls(jnp.asarray(config.points, dtype=jnp.int64), key, 0, config.level)

    @property
    def config(self) -> ParticleConfig:
        return ParticleConfig(tuple(int(x) for x in self.points), self.level, len(self.points))


def up_step(params: ModelParams, state: ChainState) -> ChainState:
    """One step of the up chain, level N -> N+1."""
    z, w = _floats(params)
    points = _up_move(z, w, jax.random.fold_in(state.key, state.time), state.points, state.level)
    return ChainState(points, state.key, state.time + 1, state.level + 1)


def down_step(state: ChainState) -> ChainState:
    """One cotransition step, level N -> N-1.

    Raises:
        DomainError: At level 0.
    """
    if state.level == 0:
        raise DomainError("Cannot step down from level 0")
    points = _down_move(jax.random.fold_in(state.key, state.time), state.points, state.level - 1)
    return ChainState(points, state.key, state.time + 1, state.level - 1)


def updown_step(params: ModelParams, state: ChainState) -> ChainState:
    """One step of the level-N up-down chain: up to N+1, then down to N."""
    z, w = _floats(params)
    points = _updown_move(
        z, w, jax.random.fold_in(state.key, state.time), state.points, state.level
    )
    return state.replace(points=points, time=state.time + 1)


def sample_up_chain(params: ModelParams, N_target: int, key: jax.Array) -> list[ParticleConfig]:
    """X(0), ..., X(N_target) of the up chain started from the empty signature."""
    if N_target < 0:
        raise DomainError(f"Target level must be non-negative, got {N_target}")
    z, w = _floats(params)
    path = _up_chain(z, w, key, params.p, N_target)
    return as_particle_configs(path, range(N_target + 1))


def sample_updown_trajectory(
    params: ModelParams,
    N: int,
    steps: int,
    key: jax.Array,
    init: ParticleConfig | str = "stationary",
) -> list[ParticleConfig]:
    """U_N(0), ..., U_N(steps).

    With init="stationary" the start is drawn from P_N by the up chain.

    Raises:
        DomainError: If init is neither a configuration of the box (N, p)
            nor "stationary".
    """
    init_key, run_key = jax.random.split(key)
    z, w = _floats(params)
    if isinstance(init, str):
        if init != "stationary":
            raise DomainError(f"Unknown initial condition {init!r}")
        start = _up_chain(z, w, init_key, params.p, N)[-1]
    else:
        if (init.level, init.p) != (N, params.p):
            raise DomainError(f"Initial configuration is not in the box ({N}, {params.p})")
        start = jnp.asarray(init.points, dtype=jnp.int64)
    path = _updown_path(z, w, N, run_key, start, steps)
    return as_particle_configs(path, N)


def trajectory_keys(seed: int, indices) -> jax.Array:
    """One independent key per trajectory index."""
    base = jax.random.key(seed)
    return jax.vmap(jax.random.fold_in, in_axes=(None, 0))(base, jnp.asarray(indices))


def stationary_batch(params: ModelParams, N: int, keys: jax.Array) -> jax.Array:
    """One draw from P_N per key, shape (len(keys), p)."""
    z, w = _floats(params)
    draw = lambda key: _up_chain(z, w, key, params.p, N)[-1]
    return jax.vmap(draw)(keys)


def advance_batch(
    params: ModelParams, N: int, keys: jax.Array, points: jax.Array, steps: int
) -> jax.Array:
    """Runs every chain of the batch ``steps`` up-down steps forward."""
    z, w = _floats(params)
    return jax.vmap(lambda key, x: _advance(z, w, N, key, x, steps))(keys, points)


def as_particle_configs(path, levels: int | Sequence[int]) -> list[ParticleConfig]:
    """Converts rows of positions to ParticleConfigs at the given level(s)."""
    path = np.asarray(path)
    if isinstance(levels, int):
        levels = [levels] * len(path)
    p = path.shape[-1]
    return [
        ParticleConfig(tuple(int(x) for x in row), int(level), p)
        for row, level in zip(path, levels)
    ]
